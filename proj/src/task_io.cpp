#include "gridcoder/task_io.hpp"

#include <filesystem>
#include <fstream>

#include "gridcoder/error.hpp"

namespace gridcoder {

namespace {

using nlohmann::json;

json pair_to_json(const Example& ex) {
    return {{"input", grid_to_rows(ex.input)}, {"output", grid_to_rows(ex.output)}};
}

Grid grid_at(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw FormatError(where + ": expected a non-empty array of rows");
    Rows rows;
    for (std::size_t r = 0; r < j.size(); ++r) {
        const std::string row_path = where + "[" + std::to_string(r) + "]";
        if (!j[r].is_array()) throw FormatError(row_path + ": expected an array of colors");
        std::vector<int> row;
        for (std::size_t c = 0; c < j[r].size(); ++c) {
            const json& cell = j[r][c];
            if (!cell.is_number_integer())
                throw FormatError(row_path + "[" + std::to_string(c) + "]: expected an integer color");
            row.push_back(cell.get<int>());
        }
        rows.push_back(std::move(row));
    }
    try {
        return grid_from_rows(rows);
    } catch (const MalformedGrid& e) {
        throw MalformedGrid(where + ": " + e.what());
    }
}

std::vector<Example> pairs_at(const json& j, const std::string& key) {
    if (!j.contains(key)) throw FormatError(key + ": missing");
    const json& arr = j[key];
    if (!arr.is_array()) throw FormatError(key + ": expected an array");
    std::vector<Example> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = key + "[" + std::to_string(i) + "]";
        if (!arr[i].is_object()) throw FormatError(where + ": expected an object");
        if (!arr[i].contains("input")) throw FormatError(where + ".input: missing");
        if (!arr[i].contains("output")) throw FormatError(where + ".output: missing");
        out.push_back({grid_at(arr[i]["input"], where + ".input"), grid_at(arr[i]["output"], where + ".output")});
    }
    return out;
}

}  // namespace

nlohmann::json task_to_json(const Task& task) {
    json train = json::array();
    for (const auto& ex : task.support) train.push_back(pair_to_json(ex));
    json test = json::array();
    for (const auto& ex : task.query) test.push_back(pair_to_json(ex));
    return {{"train", std::move(train)}, {"test", std::move(test)}};
}

Task task_from_json(const nlohmann::json& j, const std::string& id) {
    if (!j.is_object()) throw FormatError("task: expected an object");
    Task t;
    t.id = id;
    t.support = pairs_at(j, "train");
    t.query = pairs_at(j, "test");
    if (t.support.empty()) throw FormatError("train: no support pairs");
    return t;
}

Task load_task(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
    try {
        return task_from_json(j, std::filesystem::path(path).stem().string());
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    } catch (const MalformedGrid& e) {
        throw MalformedGrid(path + ": " + e.what());
    }
}

void save_task(const std::string& path, const Task& task) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path);
    out << task_to_json(task).dump() << '\n';
}

}  // namespace gridcoder
