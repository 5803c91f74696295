#ifndef OTTO_ERROR_HPP
#define OTTO_ERROR_HPP

#include <charconv>
#include <stdexcept>
#include <string>

namespace otto {

/// Argument outside the domain of a formula. `condition()` names the
/// violated requirement, e.g. "w >= 0" or "0 < tau < 1".
class domain_error : public std::domain_error {
public:
  domain_error(const std::string& what, std::string condition)
      : std::domain_error(what + " (requires " + condition + ")"),
        condition_(std::move(condition)) {}

  const std::string& condition() const noexcept { return condition_; }

private:
  std::string condition_;
};

/// The requested device cannot operate at all for these bath temperatures
/// (its feasible compression-ratio interval is empty).
class infeasible_device : public domain_error {
public:
  using domain_error::domain_error;
};

/// Raised by the numeric oracle when no sampled point of the objective is finite.
class no_feasible_point : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fmt_num(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

} // namespace detail

} // namespace otto

#endif
