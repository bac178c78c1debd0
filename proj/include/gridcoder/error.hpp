#pragma once

#include <stdexcept>
#include <string>

namespace gridcoder {

// Every failure raised by the library derives from Error so callers can catch
// broadly at the CLI boundary and narrowly everywhere else.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedGrid : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class TypeError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    using Error::Error;
};

class EvalError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

class VocabError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace gridcoder
