#include "fracdecay/cli/jobspec.hpp"

#include <cstdio>
#include <set>

#include <json.hpp>

#include "fracdecay/dimension.hpp"
#include "fracdecay/errors.hpp"
#include "fracdecay/rational.hpp"

namespace fracdecay::cli {

namespace {

using nlohmann::json;

template <class T>
void take(std::optional<T>& into, const std::optional<T>& from) {
  if (from) into = from;
}

Rational number_field(const json& v, const std::string& field) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const InputError& e) {
      throw InputError("field \"" + field + "\": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number()) return exact_rational(v.get<double>());
  throw InputError("field \"" + field + "\" must be a number or a \"p/q\" string");
}

double real_field(const json& v, const std::string& field) {
  return to_double(number_field(v, field));
}

std::size_t count_field(const json& v, const std::string& field) {
  const Rational q = number_field(v, field);
  if (q < 0 || boost::multiprecision::denominator(q) != 1) {
    throw InputError("field \"" + field + "\" must be a non-negative integer");
  }
  return static_cast<std::size_t>(boost::multiprecision::numerator(q));
}

std::int64_t integer_field(const json& v, const std::string& field) {
  const Rational q = number_field(v, field);
  if (boost::multiprecision::denominator(q) != 1) {
    throw InputError("field \"" + field + "\" must be an integer");
  }
  return static_cast<std::int64_t>(boost::multiprecision::numerator(q));
}

std::vector<Digit> digit_list(const json& v, const std::string& field) {
  if (!v.is_array()) throw InputError("field \"" + field + "\" must be an array of integers");
  std::vector<Digit> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(integer_field(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Parameters parse_parameters(const json& doc) {
  Parameters p;
  auto real = [&](const char* key, std::optional<double>& into) {
    if (doc.contains(key)) into = real_field(doc.at(key), key);
  };
  auto count = [&](const char* key, std::optional<std::size_t>& into) {
    if (doc.contains(key)) into = count_field(doc.at(key), key);
  };
  real("t", p.t);
  real("xi_max", p.xi_max);
  real("delta", p.delta);
  real("l", p.l);
  real("b_max", p.b_max);
  real("s", p.s);
  count("depth", p.depth);
  count("cap", p.cap);
  count("samples", p.samples);
  count("grid", p.grid);
  count("points_per_octave", p.points_per_octave);
  count("level", p.level);
  count("count", p.count);
  if (doc.contains("seed")) p.seed = count_field(doc.at("seed"), "seed");
  if (doc.contains("x")) {
    const auto& x = doc.at("x");
    p.x = x.is_string() ? x.get<std::string>() : to_string(number_field(x, "x"));
  }
  if (doc.contains("test")) {
    if (!doc.at("test").is_string()) throw InputError("field \"test\" must be a string");
    p.test = doc.at("test").get<std::string>();
  }
  if (doc.contains("digits")) p.digits = digit_list(doc.at("digits"), "digits");
  if (doc.contains("a1")) p.a1 = integer_field(doc.at("a1"), "a1");
  if (doc.contains("a2")) p.a2 = integer_field(doc.at("a2"), "a2");
  if (doc.contains("out")) {
    if (!doc.at("out").is_string()) throw InputError("field \"out\" must be a string");
    p.out = doc.at("out").get<std::string>();
  }
  return p;
}

WeightedIFS explicit_system(const json& doc) {
  const json& maps = doc.at("maps");
  if (!maps.is_array() || maps.empty()) throw InputError("field \"maps\" must be a non-empty array");
  std::vector<Similitude> sims;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string field = "maps[" + std::to_string(i) + "]";
    const json& m = maps[i];
    if (!m.is_array() || m.size() != 2) {
      throw InputError("field \"" + field + "\" must be a [ratio, translation] pair");
    }
    try {
      sims.push_back(make_similitude(real_field(m[0], field + "[0]"), real_field(m[1], field + "[1]")));
    } catch (const InputError& e) {
      throw InputError("field \"" + field + "\": " + e.what());
    }
  }
  WeightedIFS ifs = WeightedIFS::uniform(sims);
  if (doc.contains("weights")) {
    const json& w = doc.at("weights");
    if (!w.is_array()) throw InputError("field \"weights\" must be an array");
    if (w.size() != sims.size()) throw InputError("field \"weights\" must have one entry per map");
    std::vector<double> weights;
    for (std::size_t i = 0; i < w.size(); ++i) {
      weights.push_back(real_field(w[i], "weights[" + std::to_string(i) + "]"));
    }
    try {
      ifs = ifs.with_weights(std::move(weights));
    } catch (const InputError& e) {
      throw InputError(std::string("field \"weights\": ") + e.what());
    }
  }
  return ifs;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "maps", "weights", "luroth", "t", "xi_max", "delta", "l", "b_max", "s",
      "depth", "cap", "samples", "grid", "points_per_octave", "level", "count",
      "seed", "x", "test", "digits", "a1", "a2", "out"};
  return keys;
}

}  // namespace

void Parameters::merge(const Parameters& o) {
  take(t, o.t);
  take(xi_max, o.xi_max);
  take(delta, o.delta);
  take(l, o.l);
  take(b_max, o.b_max);
  take(s, o.s);
  take(depth, o.depth);
  take(cap, o.cap);
  take(samples, o.samples);
  take(grid, o.grid);
  take(points_per_octave, o.points_per_octave);
  take(level, o.level);
  take(count, o.count);
  take(seed, o.seed);
  take(x, o.x);
  take(test, o.test);
  take(digits, o.digits);
  take(a1, o.a1);
  take(a2, o.a2);
  take(out, o.out);
}

const WeightedIFS& JobSpec::system() const {
  if (!ifs) throw InputError("spec has no system: expected \"maps\" or \"luroth\"");
  return *ifs;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

JobSpec parse_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("spec must be a JSON object");
  for (const auto& item : doc.items()) {
    if (!known_keys().contains(item.key())) throw InputError("unknown field \"" + item.key() + "\"");
  }
  if (doc.contains("maps") && doc.contains("luroth")) {
    throw InputError("fields \"maps\" and \"luroth\" are mutually exclusive");
  }
  if (doc.contains("luroth") && doc.contains("weights")) {
    throw InputError("field \"weights\" applies only to \"maps\"");
  }

  JobSpec spec;
  spec.hash = fnv1a_hex(text);
  spec.params = parse_parameters(doc);
  if (doc.contains("luroth")) {
    spec.luroth = digit_list(doc.at("luroth"), "luroth");
    spec.ifs = luroth_ifs(*spec.luroth);
  } else if (doc.contains("maps")) {
    spec.ifs = explicit_system(doc);
  } else if (doc.contains("weights")) {
    throw InputError("field \"weights\" needs \"maps\"");
  }
  if (spec.ifs && !doc.contains("weights")) {
    try {
      spec.ifs = natural_measure(*spec.ifs);
      spec.natural_weights = true;
    } catch (const PreconditionError&) {
      // Dimension commands report the failed hypothesis themselves.
    }
  }
  return spec;
}

}  // namespace fracdecay::cli
