#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nonexch {

/// Invalid configuration: bad parameter values, malformed expressions,
/// inconsistent test settings. CLI exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid input data: NaN entries, too-small samples, unparseable rows.
/// CLI exit code 3.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact ties within a margin of a raw sample. Carries the offending
/// indices so callers can report or re-run with tie breaking enabled.
class TieError : public DataError {
public:
    TieError(char margin, std::vector<std::size_t> indices)
        : DataError(format(margin, indices)),
          margin_(margin),
          indices_(std::move(indices)) {}

    char margin() const noexcept { return margin_; }
    const std::vector<std::size_t>& indices() const noexcept { return indices_; }

private:
    static std::string format(char margin, const std::vector<std::size_t>& idx) {
        std::ostringstream os;
        os << "tied values in margin '" << margin << "' at indices [";
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i) os << ",";
            os << idx[i];
        }
        os << "]; marginals must be continuous (use random tie breaking to proceed)";
        return os.str();
    }

    char margin_;
    std::vector<std::size_t> indices_;
};

/// File read/write failure. CLI exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nonexch
