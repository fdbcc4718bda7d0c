#ifndef FIFAM_FAMILY_IO_HPP
#define FIFAM_FAMILY_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "fifam/family.hpp"

namespace fifam {

/// Malformed family input; `line` is 1-based (0 when the position is unknown,
/// e.g. structural problems in a JSON document).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Text format:
///   n=<int> r=<int> theta=<a>/<b>
///   <set: space-separated 1-based elements, one set per line>
/// `#` starts a comment; blank lines are skipped.
std::string family_to_text(const Family& family);
Family family_from_text(const std::string& text);

/// Structured (JSON) format: {"n":..,"r":..,"theta":{"a":..,"b":..},"sets":[[..],..]}.
std::string family_to_json(const Family& family);
Family family_from_json(const std::string& text);

/// Reads either format, sniffing JSON by a leading '{'.
Family load_family(const std::string& path);
void save_family(const Family& family, const std::string& path, bool structured);

} // namespace fifam

#endif
