#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracdecay/cli/jobspec.hpp"
#include "fracdecay/cli/run.hpp"
#include "fracdecay/errors.hpp"
#include "fracdecay/parallel.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitInvariant = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fracdecay::InputError("cannot read spec file \"" + path + "\"");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <class T>
void set_if(CLI::Option* opt, std::optional<T>& into, const T& value) {
  if (opt->count() > 0) into = value;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = fracdecay::cli;

  CLI::App app{"Fourier decay of self-similar measures: dimensions, transforms, exponents"};
  app.set_version_flag("--version", cli::kVersion);

  std::string command, spec_path;
  cli::Parameters flags;
  double t = 0, xi_max = 0, delta = 0, l = 0, b_max = 0, s = 0;
  std::size_t depth = 0, cap = 0, samples = 0, grid = 0, ppo = 0, level = 0, count = 0, threads = 0;
  std::uint64_t seed = 0;
  std::int64_t a1 = 0, a2 = 0;
  std::string x, test, out;
  std::vector<fracdecay::Digit> digits;

  std::string names;
  for (const auto& c : cli::commands()) names += (names.empty() ? "" : ", ") + c;
  app.add_option("command", command, "One of: " + names)->required();
  app.add_option("--spec", spec_path, "JSON job spec");
  auto* o_out = app.add_option("--out", out, "Output path (.json for JSON, CSV otherwise)");
  auto* o_t = app.add_option("--t", t, "Stopping threshold / renewal level");
  auto* o_xi = app.add_option("--xi-max", xi_max, "Largest frequency");
  auto* o_depth = app.add_option("--depth", depth, "Cylinder depth");
  auto* o_seed = app.add_option("--seed", seed, "RNG seed");
  auto* o_cap = app.add_option("--cap", cap, "Word-count cap");
  auto* o_threads = app.add_option("--threads", threads, "Worker threads (overrides FRACDECAY_THREADS)");
  auto* o_delta = app.add_option("--delta", delta, "Diagonal width");
  auto* o_samples = app.add_option("--samples", samples, "Monte Carlo samples");
  auto* o_grid = app.add_option("--grid", grid, "Grid size");
  auto* o_ppo = app.add_option("--points-per-octave", ppo, "Envelope grid density");
  auto* o_level = app.add_option("--level", level, "Figure level");
  auto* o_count = app.add_option("--count", count, "Number of Luroth digits");
  auto* o_x = app.add_option("--x", x, "Point to encode (decimal or p/q)");
  auto* o_digits = app.add_option("--digits", digits, "Luroth digits")->delimiter(',');
  auto* o_l = app.add_option("--l", l, "Diophantine exponent");
  auto* o_bmax = app.add_option("--b-max", b_max, "Scan range");
  auto* o_s = app.add_option("--s", s, "Oscillation parameter of g_s");
  auto* o_test = app.add_option("--test", test, "Renewal test function: oscillatory, one, identity");
  auto* o_a1 = app.add_option("--a1", a1, "First digit");
  auto* o_a2 = app.add_option("--a2", a2, "Second digit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  set_if(o_out, flags.out, out);
  set_if(o_t, flags.t, t);
  set_if(o_xi, flags.xi_max, xi_max);
  set_if(o_depth, flags.depth, depth);
  set_if(o_seed, flags.seed, seed);
  set_if(o_cap, flags.cap, cap);
  set_if(o_delta, flags.delta, delta);
  set_if(o_samples, flags.samples, samples);
  set_if(o_grid, flags.grid, grid);
  set_if(o_ppo, flags.points_per_octave, ppo);
  set_if(o_level, flags.level, level);
  set_if(o_count, flags.count, count);
  set_if(o_x, flags.x, x);
  set_if(o_digits, flags.digits, digits);
  set_if(o_l, flags.l, l);
  set_if(o_bmax, flags.b_max, b_max);
  set_if(o_s, flags.s, s);
  set_if(o_test, flags.test, test);
  set_if(o_a1, flags.a1, a1);
  set_if(o_a2, flags.a2, a2);

  try {
    if (o_threads->count() > 0) fracdecay::set_thread_count(threads);
    cli::JobSpec spec = spec_path.empty() ? cli::parse_spec("{}") : cli::parse_spec(read_file(spec_path));
    spec.params.merge(flags);
    const auto outcome = cli::run(command, spec);
    std::cout << outcome.summary_line() << '\n';
    return 0;
  } catch (const fracdecay::ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kExitResource;
  } catch (const fracdecay::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const fracdecay::InvariantError& e) {
    std::cerr << "internal invariant: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}
