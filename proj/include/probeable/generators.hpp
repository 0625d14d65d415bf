#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "probeable/problem.hpp"
#include "probeable/value.hpp"

namespace probeable {

/// Seeded PRNG with platform-independent bounded draws (std::mt19937_64 output
/// is fully specified; the standard distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return uniform(0, static_cast<std::int64_t>(den) - 1) < static_cast<std::int64_t>(num); }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1)); }

 private:
  std::mt19937_64 engine_;
};

/// A family of in-domain inputs: a proposal distribution restricted to a
/// region of the input space, plus forced boundary inputs.
class InputClass {
 public:
  virtual ~InputClass() = default;

  /// Draws one member of the class.
  virtual Args sample(Rng& rng) const = 0;

  /// Region membership, independent of length or value bounds.
  virtual bool contains(const Args& args) const = 0;

  /// Inputs always tested before random samples.
  virtual std::vector<Args> boundary() const = 0;

  /// Boundary inputs followed by `n` samples drawn from `seed`.
  std::vector<Args> draw(std::uint64_t seed, std::size_t n) const;
};

/// Builds the generator named by `spec.generator`. Throws std::invalid_argument on an
/// unknown generator, region or malformed parameters.
std::unique_ptr<InputClass> make_input_class(const ClassSpec& spec);

/// Names of all registered generators.
std::vector<std::string> generator_names();

}  // namespace probeable
