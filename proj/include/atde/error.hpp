#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atde {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration document. `field()` names the offending key path.
class ParseError : public Error {
public:
    ParseError(std::string field, const std::string& what)
        : Error("config field '" + field + "': " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A well-formed value that breaks a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Frame source problems (missing file, gap, mismatched dimensions, decode failure).
class SourceError : public Error {
public:
    static constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

    SourceError(const std::string& what, std::size_t index = kNoIndex)
        : Error(index == kNoIndex ? what : "frame " + std::to_string(index) + ": " + what),
          index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Two rasters/masks that must agree in size do not.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Number of clock intervals differs from the configured year span.
class YearMismatchError : public Error {
public:
    YearMismatchError(std::size_t intervals, std::size_t years)
        : Error("clock produced " + std::to_string(intervals) + " intervals but the year span covers " +
                std::to_string(years) + " years"),
          intervals_(intervals), years_(years) {}
    std::size_t intervals() const noexcept { return intervals_; }
    std::size_t years() const noexcept { return years_; }

private:
    std::size_t intervals_;
    std::size_t years_;
};

}  // namespace atde
