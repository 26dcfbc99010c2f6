#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "berezin_lab/io.hpp"

namespace berezin_lab::verify {

struct Criterion {
  int id;
  std::string_view name;
};

/// The acceptance suite, in order.
std::span<const Criterion> criteria();

/// Clouds shared between criteria (orbit and Haar clouds feed the
/// inclusion check), built on first use.
class Suite {
 public:
  explicit Suite(std::uint64_t seed = 0);
  ~Suite();
  Suite(const Suite&) = delete;
  Suite& operator=(const Suite&) = delete;

  io::CriterionResult run(int id);

  /// Runs `ids` (all criteria when empty) and reports each result as it
  /// finishes.
  std::vector<io::CriterionResult> run_all(std::span<const int> ids = {},
                                           const std::function<void(const io::CriterionResult&)>& on_result = {});

  struct Cache;

 private:
  std::uint64_t seed_;
  std::unique_ptr<Cache> cache_;
};

/// `PASS  #07 name: detail`.
std::string format_line(const io::CriterionResult& r);

}  // namespace berezin_lab::verify
