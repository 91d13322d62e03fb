#include "seqlab/fixture.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <string>

#include "seqlab/errors.hpp"
#include "seqlab/lineability.hpp"
#include "seqlab/rng.hpp"

namespace seqlab {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(Errc::ConfigError, where + " is missing field '" + key + "'");
  }
  return j.at(key);
}

std::size_t index_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw Error(Errc::ConfigError, where + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

GeneratorSpec GeneratorSpec::dense(std::vector<Rational> coords) {
  GeneratorSpec g;
  g.kind = Kind::Dense;
  g.coords = std::move(coords);
  return g;
}

GeneratorSpec GeneratorSpec::geometric(Rational ratio, Rational scale) {
  GeneratorSpec g;
  g.kind = Kind::Geometric;
  g.ratio = std::move(ratio);
  g.scale = std::move(scale);
  return g;
}

GeneratorSpec GeneratorSpec::unit(std::size_t index) {
  GeneratorSpec g;
  g.kind = Kind::Unit;
  g.index = index;
  return g;
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  if (j.is_number()) return rational_from_double(j.get<double>());
  throw Error(Errc::ConfigError, "expected a rational, got " + j.dump());
}

json space_to_json(const AmbientSpace& s) {
  switch (s.kind()) {
    case SpaceKind::Lp: return json{{"kind", "lp"}, {"p", s.p()}};
    case SpaceKind::LInfty: return json{{"kind", "linf"}};
    case SpaceKind::C0: return json{{"kind", "c0"}};
  }
  return json{};
}

AmbientSpace space_from_json(const json& j) {
  const auto& kind = field(j, "kind", "space");
  if (!kind.is_string()) throw Error(Errc::ConfigError, "space.kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "lp") {
    const auto& p = field(j, "p", "space");
    if (!p.is_number()) throw Error(Errc::ConfigError, "space.p must be a number");
    return AmbientSpace::lp(p.get<double>());
  }
  if (k == "linf") return AmbientSpace::linf();
  if (k == "c0") return AmbientSpace::c0();
  throw Error(Errc::ConfigError, "space.kind must be one of lp, linf, c0; got '" + k + "'");
}

FixtureSpec fixture_from_json(const json& j) {
  FixtureSpec f;
  f.space = space_from_json(field(j, "space", "fixture"));
  f.truncation = index_from_json(field(j, "truncation", "fixture"), "truncation");
  if (f.truncation == 0) throw Error(Errc::ConfigError, "truncation must be >= 1");
  const auto& gens = field(j, "generators", "fixture");
  if (!gens.is_array() || gens.empty()) {
    throw Error(Errc::ConfigError, "generators must be a nonempty array");
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string where = "generators[" + std::to_string(i) + "]";
    const auto& g = gens[i];
    const auto kind = field(g, "kind", where).get<std::string>();
    if (kind == "dense") {
      const auto& c = field(g, "coords", where);
      if (!c.is_array()) throw Error(Errc::ConfigError, where + ".coords must be an array");
      if (c.size() > f.truncation) {
        throw Error(Errc::ConfigError, where + ".coords is longer than the truncation");
      }
      std::vector<Rational> coords;
      for (const auto& v : c) coords.push_back(rational_from_json(v));
      f.generators.push_back(GeneratorSpec::dense(std::move(coords)));
    } else if (kind == "geometric") {
      Rational scale = g.contains("scale") ? rational_from_json(g.at("scale")) : Rational(1);
      f.generators.push_back(
          GeneratorSpec::geometric(rational_from_json(field(g, "ratio", where)), scale));
    } else if (kind == "unit") {
      auto idx = index_from_json(field(g, "index", where), where + ".index");
      if (idx >= f.truncation) throw Error(Errc::ConfigError, where + ".index must be < truncation");
      f.generators.push_back(GeneratorSpec::unit(idx));
    } else {
      throw Error(Errc::ConfigError, where + ".kind must be dense, geometric or unit");
    }
  }
  return f;
}

json fixture_to_json(const FixtureSpec& f) {
  json gens = json::array();
  for (const auto& g : f.generators) {
    switch (g.kind) {
      case GeneratorSpec::Kind::Dense: {
        json c = json::array();
        for (const auto& q : g.coords) c.push_back(rational_to_string(q));
        gens.push_back(json{{"kind", "dense"}, {"coords", c}});
        break;
      }
      case GeneratorSpec::Kind::Geometric:
        gens.push_back(json{{"kind", "geometric"},
                            {"ratio", rational_to_string(g.ratio)},
                            {"scale", rational_to_string(g.scale)}});
        break;
      case GeneratorSpec::Kind::Unit:
        gens.push_back(json{{"kind", "unit"}, {"index", g.index}});
        break;
    }
  }
  return json{{"space", space_to_json(f.space)}, {"truncation", f.truncation}, {"generators", gens}};
}

FixtureSpec load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ConfigError, "cannot open fixture '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, "fixture '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return fixture_from_json(j);
}

std::vector<ExactSeq> FixtureSpec::materialize() const {
  std::vector<ExactSeq> out;
  out.reserve(generators.size());
  const SpaceKind tail_mode = space.kind();
  for (const auto& g : generators) {
    switch (g.kind) {
      case GeneratorSpec::Kind::Dense: {
        std::vector<Rational> c(truncation, Rational(0));
        for (std::size_t j = 0; j < g.coords.size() && j < truncation; ++j) c[j] = g.coords[j];
        out.emplace_back(std::move(c));
        break;
      }
      case GeneratorSpec::Kind::Geometric:
        out.push_back(scaled(g.scale, geometric_generator(g.ratio, truncation, tail_mode)));
        break;
      case GeneratorSpec::Kind::Unit:
        out.push_back(ExactSeq::unit(truncation, g.index));
        break;
    }
  }
  return out;
}

FixtureSpec random_sup_fixture(std::uint64_t seed, SpaceKind kind, std::size_t truncation) {
  if (kind == SpaceKind::Lp) throw Error(Errc::ConfigError, "random_sup_fixture needs linf or c0");
  if (truncation < 40) throw Error(Errc::ConfigError, "truncation must satisfy T >= 40");
  Rng rng(seed);
  FixtureSpec f;
  f.space = kind == SpaceKind::C0 ? AmbientSpace::c0() : AmbientSpace::linf();
  f.truncation = truncation;

  const std::size_t units = 14 + rng.below(9);
  std::vector<std::size_t> positions;
  while (positions.size() < units) {
    const std::size_t j = rng.below(truncation / 2);
    if (std::find(positions.begin(), positions.end(), j) == positions.end()) positions.push_back(j);
  }
  std::sort(positions.begin(), positions.end());
  for (auto j : positions) f.generators.push_back(GeneratorSpec::unit(j));

  static const char* const kRatios[] = {"1/2", "1/3", "2/3", "1/4", "3/4", "2/5", "3/5"};
  static const char* const kScales[] = {"1", "-1", "1/2", "2"};
  std::vector<std::size_t> picked;
  const std::size_t geos = 2 + rng.below(3);
  while (picked.size() < geos) {
    const std::size_t i = rng.below(std::size(kRatios));
    if (std::find(picked.begin(), picked.end(), i) == picked.end()) picked.push_back(i);
  }
  for (auto i : picked) {
    f.generators.push_back(
        GeneratorSpec::geometric(parse_rational(kRatios[i]), parse_rational(kScales[rng.below(4)])));
  }

  static const int kTails[] = {-2, -1, 1, 2};
  const std::size_t dense = 5 + rng.below(6);
  for (std::size_t d = 0; d < dense; ++d) {
    const std::size_t prefix = 3 + rng.below(16);
    std::vector<Rational> coords(prefix);
    for (auto& c : coords) {
      c = Rational(static_cast<long>(rng.below(7)) - 3, static_cast<long>(1 + rng.below(4)));
      c.canonicalize();
    }
    if (kind == SpaceKind::LInfty) {
      coords.resize(truncation, Rational(kTails[rng.below(4)], 2));
    }
    f.generators.push_back(GeneratorSpec::dense(std::move(coords)));
  }
  return f;
}

}  // namespace seqlab
