#include "fracdecay/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>

#include <json.hpp>

#include "fracdecay/dimension.hpp"
#include "fracdecay/diophantine.hpp"
#include "fracdecay/errors.hpp"
#include "fracdecay/fourier.hpp"
#include "fracdecay/luroth.hpp"
#include "fracdecay/measure.hpp"
#include "fracdecay/parallel.hpp"
#include "fracdecay/rational.hpp"
#include "fracdecay/renewal.hpp"

namespace fracdecay::cli {

namespace {

using Handler = std::function<Outcome(const JobSpec&)>;

std::size_t cap_of(const JobSpec& spec) { return spec.params.cap.value_or(kDefaultWordCap); }

std::vector<Digit> digit_set(const JobSpec& spec) {
  if (spec.luroth) return *spec.luroth;
  if (spec.params.digits) return *spec.params.digits;
  throw InputError("command needs a Luroth digit set: \"luroth\" or \"digits\"");
}

std::pair<Digit, Digit> two_smallest(std::vector<Digit> digits) {
  std::sort(digits.begin(), digits.end());
  digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
  if (digits.size() < 2) throw InputError("command needs at least two distinct digits");
  return {digits[0], digits[1]};
}

std::string join_digits(const std::vector<Digit>& digits) {
  std::string s;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(digits[i]);
  }
  return s;
}

std::int64_t as_int(std::size_t n) { return static_cast<std::int64_t>(n); }

Outcome cmd_dim(const JobSpec& spec) {
  const auto sol = solve_moran(spec.system());
  Outcome o;
  o.summary = {{"dim", sol.s_star}, {"residual", sol.residual}, {"iterations", as_int(sol.iterations)}};
  o.table.header = {"dim", "residual", "iterations"};
  o.table.rows.push_back({sol.s_star, sol.residual, as_int(sol.iterations)});
  return o;
}

Outcome cmd_weights(const JobSpec& spec) {
  const auto sol = solve_moran(spec.system());
  const auto ifs = natural_weights(spec.system(), sol.s_star);
  Outcome o;
  o.summary = {{"dim", sol.s_star}, {"n", as_int(ifs.size())}};
  o.table.header = {"symbol", "ratio", "translation", "weight"};
  for (Symbol w = 0; w < ifs.size(); ++w) {
    o.summary.emplace_back("p_" + ifs.alphabet()[w], ifs.weight(w));
    o.table.rows.push_back({ifs.alphabet()[w], ifs.ratio(w), ifs.map(w).translation, ifs.weight(w)});
  }
  return o;
}

void add_sample_rows(Table& table, const std::vector<SpectralSample>& samples) {
  table.header = {"xi", "re", "im", "abs", "error_bound", "method", "cost"};
  for (const auto& s : samples) {
    table.rows.push_back({s.xi, s.value.real(), s.value.imag(), std::abs(s.value), s.error_bound,
                          std::string(to_string(s.method)), as_int(s.cost)});
  }
}

Outcome cmd_fourier_scan(const JobSpec& spec) {
  const auto& p = spec.params;
  const auto& ifs = spec.system();
  const double xi_max = p.xi_max.value_or(100.0);
  const std::size_t grid = p.grid.value_or(201);
  if (grid < 2) throw InputError("grid must have at least 2 points");
  if (!(xi_max > 0.0)) throw InputError("xi_max must be positive");
  std::vector<SpectralSample> samples(grid);
  auto xi_at = [&](std::size_t k) { return xi_max * static_cast<double>(k) / static_cast<double>(grid - 1); };
  if (p.samples) {
    const std::size_t depth = p.depth.value_or(40);
    const std::uint64_t seed = p.seed.value_or(1);
    for (std::size_t k = 0; k < grid; ++k) samples[k] = mu_hat_monte_carlo(ifs, xi_at(k), *p.samples, depth, seed);
  } else {
    const CylinderApproximation approx(ifs, p.t.value_or(12.0), cap_of(spec));
    parallel_for(grid, [&](std::size_t k) { samples[k] = approx.evaluate(xi_at(k)); });
  }
  Outcome o;
  double max_abs = 0.0, max_bound = 0.0;
  for (const auto& s : samples) {
    max_abs = std::max(max_abs, std::abs(s.value));
    max_bound = std::max(max_bound, s.error_bound);
  }
  o.summary = {{"points", as_int(grid)},
               {"method", std::string(to_string(samples.front().method))},
               {"max_abs", max_abs},
               {"max_error_bound", max_bound}};
  add_sample_rows(o.table, samples);
  return o;
}

Outcome cmd_decay_fit(const JobSpec& spec) {
  const auto& p = spec.params;
  const double xi_max = p.xi_max.value_or(1e4);
  const double t = p.t.value_or(std::log(std::numbers::pi * xi_max) + 7.0);
  const auto env = dyadic_envelope(spec.system(), xi_max, p.points_per_octave.value_or(16), t, cap_of(spec));
  const auto fit = decay_fit(env.blocks);
  double max_bound = 0.0;
  for (const auto& b : env.blocks) max_bound = std::max(max_bound, b.max_error_bound);
  Outcome o;
  o.summary = {{"beta_hat", fit.beta_hat},         {"log_C", fit.log_C},
               {"residual_rms", fit.residual_rms}, {"blocks", as_int(env.blocks.size())},
               {"xi_min", fit.xi_min},             {"xi_max", fit.xi_max},
               {"t", t},                           {"max_error_bound", max_bound}};
  o.table.header = {"X", "max_abs"};
  for (const auto& b : env.blocks) o.table.rows.push_back({b.block_start, b.max_abs});
  return o;
}

Outcome cmd_regularity(const JobSpec& spec) {
  const auto report = regularity_scan(spec.system(), spec.params.depth.value_or(10), cap_of(spec));
  Outcome o;
  o.summary = {{"alpha_hat", report.alpha_hat},
               {"depth", as_int(report.depth)},
               {"observed_prefactor", report.observed_prefactor},
               {"smallest_scale", report.smallest_scale},
               {"interval_constant", report.interval_constant}};
  o.table.header = {"depth", "min_exponent", "max_exponent"};
  for (const auto& l : report.levels) o.table.rows.push_back({as_int(l.depth), l.min_exponent, l.max_exponent});
  return o;
}

Outcome cmd_diagonal(const JobSpec& spec) {
  const double delta = spec.params.delta.value_or(0.01);
  const std::size_t depth = spec.params.depth.value_or(8);
  const auto b = diagonal_mass(spec.system(), delta, depth, cap_of(spec));
  Outcome o;
  o.summary = {{"lower", b.lower}, {"upper", b.upper}, {"delta", delta}, {"depth", as_int(depth)}};
  o.table.header = {"delta", "depth", "lower", "upper"};
  o.table.rows.push_back({delta, as_int(depth), b.lower, b.upper});
  return o;
}

Outcome cmd_dioph_scan(const JobSpec& spec) {
  const auto lambda = auxiliary_measure(spec.system());
  double l = 2.0;
  std::optional<double> log_c;
  if (spec.luroth && spec.luroth->size() >= 2) {
    const auto [a1, a2] = two_smallest(*spec.luroth);
    l = 2.0 * matveev_degree(a1, a2) - 2.0;
    log_c = matveev_log_constant(a1, a2);
  }
  if (spec.params.l) l = *spec.params.l;
  auto report = weakly_diophantine_scan(lambda, l, spec.params.b_max.value_or(1e4), spec.params.grid.value_or(100000));
  if (log_c) report.log_c = *log_c;
  Outcome o;
  o.summary = {{"l", l},
               {"min_b", report.minimum.b},
               {"min_abs_one_minus_L", report.minimum.abs_one_minus_L},
               {"min_log_scaled", report.minimum.log_scaled},
               {"points", as_int(report.scan.size())},
               {"lattice", std::string(to_string(classify_lattice(lambda)))}};
  if (log_c) o.summary.emplace_back("log_c", *log_c);
  o.table.header = {"b", "abs_one_minus_L", "b_pow_l_times"};
  for (const auto& s : report.scan) o.table.rows.push_back({s.b, s.abs_one_minus_L, s.scaled});
  return o;
}

Outcome cmd_matveev(const JobSpec& spec) {
  std::int64_t a1 = 0, a2 = 0;
  if (spec.params.a1 && spec.params.a2) {
    a1 = *spec.params.a1;
    a2 = *spec.params.a2;
  } else {
    std::tie(a1, a2) = two_smallest(digit_set(spec));
  }
  const double l = matveev_degree(a1, a2);
  const double log_c = matveev_log_constant(a1, a2);
  const bool free1 = perfect_power_free(static_cast<std::uint64_t>(a1));
  const bool free2 = perfect_power_free(static_cast<std::uint64_t>(a2));
  Outcome o;
  o.summary = {{"a1", a1}, {"a2", a2}, {"l", l}, {"log_c", log_c},
               {"perfect_power_free_a1", free1}, {"perfect_power_free_a2", free2}};
  o.table.header = {"a1", "a2", "l", "log_c"};
  o.table.rows.push_back({a1, a2, l, log_c});
  return o;
}

Outcome cmd_luroth_encode(const JobSpec& spec) {
  if (!spec.params.x) throw InputError("luroth-encode needs \"x\"");
  const Rational x = parse_rational(*spec.params.x);
  const auto digits = luroth_encode(x, spec.params.count.value_or(30));
  const auto decoded = luroth_decode(digits);
  Outcome o;
  o.summary = {{"digits", join_digits(digits.digits)},
               {"terminating", digits.terminating},
               {"value", decoded.value},
               {"tail", decoded.tail}};
  o.table.header = {"k", "digit"};
  for (std::size_t k = 0; k < digits.digits.size(); ++k) o.table.rows.push_back({as_int(k + 1), digits.digits[k]});
  return o;
}

Outcome cmd_luroth_decode(const JobSpec& spec) {
  if (!spec.params.digits) throw InputError("luroth-decode needs \"digits\"");
  const LurothDigits digits{*spec.params.digits, false};
  const auto exact = luroth_decode_exact(digits);
  const double value = to_double(exact.value), tail = to_double(exact.tail);
  Outcome o;
  o.summary = {{"value", value}, {"tail", tail}, {"exact_value", to_string(exact.value)},
               {"exact_tail", to_string(exact.tail)}};
  o.table.header = {"value", "tail", "exact_value", "exact_tail"};
  o.table.rows.push_back({value, tail, to_string(exact.value), to_string(exact.tail)});
  return o;
}

std::string interval_text(const FigureInterval& f) {
  return "(" + to_string(f.lo) + "," + to_string(f.hi) + "]";
}

Outcome cmd_luroth_figure(const JobSpec& spec) {
  const auto digits = digit_set(spec);
  const std::size_t level = spec.params.level.value_or(3);
  const auto intervals = luroth_figure(digits, level);
  std::string ancestors;
  for (const auto& f : luroth_figure(digits, 1)) {
    if (!ancestors.empty()) ancestors += ';';
    ancestors += interval_text(f);
  }
  Outcome o;
  o.summary = {{"level", as_int(level)}, {"intervals", as_int(intervals.size())}, {"ancestors", ancestors}};
  o.table.header = {"code", "lo", "hi", "lo_value", "hi_value"};
  for (const auto& f : intervals) {
    o.table.rows.push_back({join_digits(f.code), to_string(f.lo), to_string(f.hi), to_double(f.lo), to_double(f.hi)});
  }
  return o;
}

Outcome cmd_beta(const JobSpec& spec) {
  const auto digits = digit_set(spec);
  const auto [a1, a2] = two_smallest(digits);
  const double dim = solve_moran(luroth_ifs(digits)).s_star;
  const double b4 = beta_theorem4(digits);
  const double b10 = beta_prop10(digits);
  const double theory = theoretical_beta(dim, matveev_degree(a1, a2));
  Outcome o;
  o.summary = {{"dim", dim}, {"beta_thm4", b4}, {"beta_prop10", b10}, {"theoretical_beta", theory}};
  o.table.header = {"dim", "beta_thm4", "beta_prop10", "theoretical_beta"};
  o.table.rows.push_back({dim, b4, b10, theory});
  return o;
}

TestFunction test_function(const JobSpec& spec, const AuxiliaryMeasure& lambda) {
  const std::string name = spec.params.test.value_or("oscillatory");
  if (name == "oscillatory") return oscillatory(spec.params.s.value_or(0.3));
  if (name == "one") return constant_one();
  if (name == "identity") return identity_function(1.0 + lambda.max_location());
  throw InputError("field \"test\" must be one of oscillatory, one, identity");
}

Outcome cmd_renewal(const JobSpec& spec) {
  const auto lambda = auxiliary_measure(spec.system());
  const auto g = test_function(spec, lambda);
  const auto r = renewal_expectation_mc(lambda, g, spec.params.t.value_or(30.0),
                                        spec.params.samples.value_or(1'000'000), spec.params.seed.value_or(1));
  Outcome o;
  const double z = r.mc_stderr > 0.0 ? r.discrepancy() / r.mc_stderr : 0.0;
  o.summary = {{"re_mc", r.mc_estimate.real()},  {"im_mc", r.mc_estimate.imag()},
               {"stderr", r.mc_stderr},          {"re_limit", r.limit_value.real()},
               {"im_limit", r.limit_value.imag()}, {"discrepancy", r.discrepancy()},
               {"z", z},                         {"lattice", r.lattice}};
  o.table.header = {"t", "re_mc", "im_mc", "stderr", "re_limit", "im_limit", "n"};
  o.table.rows.push_back({r.t, r.mc_estimate.real(), r.mc_estimate.imag(), r.mc_stderr,
                          r.limit_value.real(), r.limit_value.imag(), as_int(r.n_samples)});
  return o;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"dim", cmd_dim},
      {"weights", cmd_weights},
      {"fourier-scan", cmd_fourier_scan},
      {"decay-fit", cmd_decay_fit},
      {"regularity", cmd_regularity},
      {"diagonal", cmd_diagonal},
      {"dioph-scan", cmd_dioph_scan},
      {"matveev", cmd_matveev},
      {"luroth-encode", cmd_luroth_encode},
      {"luroth-decode", cmd_luroth_decode},
      {"luroth-figure", cmd_luroth_figure},
      {"beta", cmd_beta},
      {"renewal", cmd_renewal},
  };
  return table;
}

nlohmann::json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, c);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(double v) const {
      if (std::isnan(v)) return "nan";
      if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      return buf;
    }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, cell);
}

std::string Outcome::summary_line() const {
  std::string line;
  for (const auto& [key, value] : summary) {
    if (!line.empty()) line += ' ';
    line += key + "=" + format_cell(value);
  }
  return line;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, _] : handlers()) v.push_back(name);
    return v;
  }();
  return names;
}

std::string to_csv(const Table& table) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + quote(format_cell(row[i]));
    out += '\n';
  }
  return out;
}

std::string to_json(const Outcome& outcome, const std::string& command, const JobSpec& spec) {
  nlohmann::json doc;
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["spec_hash"] = spec.hash;
  doc["wall_seconds"] = outcome.wall_seconds;
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [key, value] : outcome.summary) summary[key] = cell_json(value);
  doc["summary"] = summary;
  doc["columns"] = outcome.table.header;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : outcome.table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    rows.push_back(r);
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

Outcome run(const std::string& command, const JobSpec& spec) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) throw InputError("unknown command \"" + command + "\"");
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome = it->second(spec);
  outcome.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (spec.params.out) {
    const std::string& path = *spec.params.out;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot open output file \"" + path + "\"");
    file << (ends_with(path, ".json") ? to_json(outcome, command, spec) : to_csv(outcome.table));
    if (!file) throw InputError("failed writing \"" + path + "\"");
  }
  return outcome;
}

}  // namespace fracdecay::cli
