#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "probeable/value.hpp"

namespace probeable {

using SolutionFn = std::function<Value(const Args&)>;

/// A native implementation of a problem's function: either the reference
/// behavior or a foil (a deliberately conventional solution that misses
/// specific hidden details).
struct Solution {
  std::string name;     // "<problem>.<label>"
  std::string problem;  // problem id
  std::string summary;
  SolutionFn fn;
};

std::span<const Solution> all_solutions();

/// nullptr when unknown.
const Solution* find_solution(std::string_view name);

}  // namespace probeable
