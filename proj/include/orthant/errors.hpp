#pragma once

#include <stdexcept>
#include <string>

namespace orthant {

// Error taxonomy drives the CLI exit codes: parse errors are usage-level (1),
// everything else is a pipeline failure (2) unless embedded in a report section.
enum class ErrorKind { parse, domain, numeric, budget, unsupported };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_parse(const std::string& msg) { throw Error(ErrorKind::parse, msg); }
[[noreturn]] inline void fail_domain(const std::string& msg) { throw Error(ErrorKind::domain, msg); }
[[noreturn]] inline void fail_numeric(const std::string& msg) { throw Error(ErrorKind::numeric, msg); }
[[noreturn]] inline void fail_budget(const std::string& msg) { throw Error(ErrorKind::budget, msg); }
[[noreturn]] inline void fail_unsupported(const std::string& msg) { throw Error(ErrorKind::unsupported, msg); }

} // namespace orthant
