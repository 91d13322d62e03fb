#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "json.hpp"
#include "seqlab/scalar.hpp"
#include "seqlab/seq.hpp"
#include "seqlab/space.hpp"
#include "seqlab/subspace.hpp"

namespace seqlab {

struct GeneratorSpec {
  enum class Kind { Dense, Geometric, Unit };

  Kind kind = Kind::Dense;
  std::vector<Rational> coords;  ///< dense; zero-padded to the truncation
  Rational ratio;                ///< geometric
  Rational scale = 1;            ///< geometric
  std::size_t index = 0;         ///< unit, 0-based

  static GeneratorSpec dense(std::vector<Rational> coords);
  static GeneratorSpec geometric(Rational ratio, Rational scale = 1);
  static GeneratorSpec unit(std::size_t index);
};

/// Subspace description: {"space":{...}, "truncation":T, "generators":[...]}.
struct FixtureSpec {
  AmbientSpace space = AmbientSpace::lp(2.0);
  std::size_t truncation = 0;
  std::vector<GeneratorSpec> generators;

  /// Exact generator sequences; geometric tails follow the space's norm.
  std::vector<ExactSeq> materialize() const;
};

/// Throws ConfigError naming the offending field.
FixtureSpec fixture_from_json(const nlohmann::json& j);
nlohmann::json fixture_to_json(const FixtureSpec& f);
FixtureSpec load_fixture(const std::filesystem::path& path);

nlohmann::json space_to_json(const AmbientSpace& s);
AmbientSpace space_from_json(const nlohmann::json& j);

/// Rationals travel as "num/den" strings; plain JSON numbers are read exactly.
Rational rational_from_json(const nlohmann::json& j);

/// Seeded sup-norm fixture: unit vectors at random positions, a few scaled
/// geometric tails and short dense vectors. For LInfty the dense vectors end in
/// a constant run (so cluster limits can be nonzero); for C0 they stop.
FixtureSpec random_sup_fixture(std::uint64_t seed, SpaceKind kind, std::size_t truncation = 120);

template <Scalar S>
BasicSubspace<S> build_subspace(const FixtureSpec& f, double eta = 1e-9) {
  auto exact = f.materialize();
  std::vector<BasicSeq<S>> gens;
  gens.reserve(exact.size());
  for (auto& g : exact) {
    if constexpr (ScalarOps<S>::exact) {
      gens.push_back(std::move(g));
    } else {
      gens.push_back(to_float(g));
    }
  }
  return BasicSubspace<S>(f.space, std::move(gens), eta);
}

}  // namespace seqlab
