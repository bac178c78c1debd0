#pragma once

#include <string>

#include <json.hpp>

#include "gridcoder/program.hpp"

namespace gridcoder {

/// ARC task layout: {"train": [{"input", "output"}...], "test": [...]}.
nlohmann::json task_to_json(const Task& task);

/// Throws FormatError naming the offending path, e.g. `train[1].output[2]`,
/// or MalformedGrid with the grid's path for out-of-palette or ragged rows.
/// `id` is stored on the task; ARC files carry no id of their own.
Task task_from_json(const nlohmann::json& j, const std::string& id = {});

/// Reads an ARC task file; the id defaults to the file stem.
Task load_task(const std::string& path);
void save_task(const std::string& path, const Task& task);

}  // namespace gridcoder
