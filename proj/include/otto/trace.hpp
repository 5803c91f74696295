#ifndef OTTO_TRACE_HPP
#define OTTO_TRACE_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace otto {

/// Named intermediates of a closed-form evaluation, in the order they were
/// produced. Names follow the symbols of the derivation (N, K, G, ...).
class Trace {
public:
  using Entry = std::pair<std::string, double>;

  void set(std::string_view name, double value) {
    for (auto& [k, v] : entries_) {
      if (k == name) {
        v = value;
        return;
      }
    }
    entries_.emplace_back(std::string(name), value);
  }

  bool contains(std::string_view name) const noexcept {
    for (const auto& e : entries_)
      if (e.first == name)
        return true;
    return false;
  }

  double at(std::string_view name) const {
    for (const auto& e : entries_)
      if (e.first == name)
        return e.second;
    throw std::out_of_range("trace has no entry '" + std::string(name) + "'");
  }

  std::size_t size() const noexcept { return entries_.size(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

private:
  std::vector<Entry> entries_;
};

using ClosedFormTrace = Trace;
using FridgeTrace = Trace;

template <class T>
struct Traced {
  T value{};
  Trace trace;
};

} // namespace otto

#endif
