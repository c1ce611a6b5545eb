#pragma once

#include <stdexcept>
#include <string>

namespace sat2track {

// Base for every failure the library reports. Negative results (unsatisfiable,
// not completable, invalid certificate) are data, never exceptions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A configured search bound was exceeded; no answer was produced.
class LimitError : public Error {
public:
    enum class Side { oracle, solver };

    LimitError(Side side, const std::string& what) : Error(what), side_(side) {}

    Side side() const noexcept { return side_; }

private:
    Side side_;
};

class TrackError : public Error {
public:
    using Error::Error;
};

class GadgetError : public Error {
public:
    using Error::Error;
};

class CompileError : public Error {
public:
    using Error::Error;
};

class LayoutError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace sat2track
