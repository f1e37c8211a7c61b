#include "golden.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "oracles.hpp"
#include "relaylab/bounds.hpp"
#include "relaylab/concentration.hpp"
#include "relaylab/corpus.hpp"
#include "relaylab/gap_optimizer.hpp"
#include "relaylab/numerics.hpp"
#include "relaylab/quadrature.hpp"
#include "relaylab/relay_verifier.hpp"
#include "relaylab/serialization.hpp"

namespace golden {

using nlohmann::json;

namespace {

// Riemann oracle settings for relay quantities.
constexpr double kRiemannStep = 1e-4;

double ball_radius_by_series(int n, double floor, double noise) {
  double lo = 0.0;
  double hi = std::sqrt(noise) * (std::sqrt(n) + 10.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle::chi_cdf_series(mid / std::sqrt(noise), n) < floor ? lo : hi) = mid;
  }
  return hi;
}

GoldenRecord oracle_record(std::string id, json input, double expected, double check, double tol,
                           std::string method) {
  return {std::move(id), std::move(input), expected, check, tol, "oracle", std::move(method)};
}

void add_relay_records(std::vector<GoldenRecord>& out, const std::string& name,
                       const relaylab::ToyRelayCode& code, double half_width) {
  const relaylab::EntropyReport r = relaylab::entropy_quantities(code);
  const oracle::RelayQuantities o = oracle::relay_quantities_riemann(
      code.codebook, code.thresholds, code.noise, kRiemannStep, half_width);
  const json input = relaylab::to_json(code);
  char method[128];
  std::snprintf(method, sizeof method, "midpoint rule, step %g on [-%g, %g]", kRiemannStep,
                half_width, half_width);
  out.push_back(oracle_record(name + ".a", input, r.a, o.a, 1e-9, method));
  out.push_back(oracle_record(name + ".b", input, r.b, o.b, 1e-9, method));
  out.push_back(oracle_record(name + ".c", input, r.c, o.c, 1e-8, method));
  out.push_back(oracle_record(name + ".h_y_given_i", input, r.h_y_given_i, o.h_y_given_i, 1e-8, method));
  out.push_back(oracle_record(name + ".i_xy", input, r.i_xy, o.i_xy, 1e-8, method));
  out.push_back(oracle_record(name + ".i_x_yi", input, r.i_x_yi, o.i_x_yi, 1e-8, method));
  const double oracle_rhs = o.b - o.c +
                            0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * code.noise) +
                            o.a + std::sqrt(2.0 * o.a / std::numbers::ln2);
  out.push_back(oracle_record(name + ".slack", input, r.slack, oracle_rhs - o.h_y_given_i, 1e-7, method));
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex_digest(std::string_view bytes) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a(bytes)));
  return buffer;
}

std::string GoldenRecord::digest() const { return hex_digest(input.dump()); }

bool GoldenRecord::within_tolerance() const { return std::abs(expected - check) <= tol; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string relay_codes_text() {
  std::string text;
  for (const auto& code : relaylab::generate_relay_corpus()) {
    text += relaylab::to_json(code).dump();
    text += '\n';
  }
  return text;
}

std::string golden_sweep_text() {
  relaylab::SweepSpec spec;
  spec.snr_count = 15;
  spec.r0_max = 2.0;
  spec.r0_count = 21;
  std::ostringstream out;
  relaylab::write_csv(out, relaylab::sweep(spec));
  return out.str();
}

std::vector<GoldenRecord> compute_records() {
  using relaylab::ChannelParams;
  std::vector<GoldenRecord> out;

  // Constants quoted to three or four significant figures.
  const double a_half = relaylab::solve_a_star(0.5);
  out.push_back({"a_star.r0=0.5", {{"r0", 0.5}}, a_half, 0.0535, 1e-4, "reference-constant",
                 "quoted crossing point"});
  out.push_back({"gap.snr=1e6.r0=0.5", {{"snr", 1e6}, {"r0", 0.5}},
                 relaylab::gap(ChannelParams::symmetric(1e6, 0.5)), 0.0535, 1e-4,
                 "reference-constant", "quoted supremum of the gap"});
  out.push_back({"preconstant.default", {{"delta", a_half}, {"antennas", 4}},
                 relaylab::network_gap_preconstant(a_half, 4), 0.0535 / 4.0, 1e-4,
                 "reference-constant", "quoted gap divided by four antennas"});

  for (const double r0 : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    out.push_back(oracle_record("a_star.closed_form.r0=" + relaylab::format_human(r0), {{"r0", r0}},
                                relaylab::solve_a_star(r0), oracle::a_star_quadratic(r0), 1e-12,
                                "quadratic formula in sqrt(a), long double"));
  }
  for (const auto& [snr, r0] : std::vector<std::pair<double, double>>{
           {1.0, 1.0}, {10.0, 0.5}, {1e6, 0.5}, {100.0, 3.0}, {0.5, 0.2}}) {
    out.push_back(oracle_record(
        "new_bound.snr=" + relaylab::format_human(snr) + ".r0=" + relaylab::format_human(r0),
        {{"snr", snr}, {"r0", r0}}, relaylab::new_bound(ChannelParams::symmetric(snr, r0)).value,
        oracle::new_bound_dense_scan(snr, r0, 1e-6), 1e-5, "three-constraint scan, step 1e-6"));
  }

  for (const double x : {-5.0, -1.0, 1.0, 3.0}) {
    out.push_back(oracle_record("normal_cdf.x=" + relaylab::format_human(x), {{"x", x}},
                                relaylab::std_normal_cdf(x), oracle::normal_cdf_series(x), 1e-15,
                                "Taylor series of Phi, long double"));
  }
  out.push_back(oracle_record("chi_cdf.n=5.x=2", {{"n", 5}, {"x", 2.0}}, relaylab::chi_cdf(2.0, 5),
                              oracle::chi_cdf_series(2.0, 5), 1e-14,
                              "series for the lower incomplete gamma, long double"));

  for (const double m : {1.0, 10.0}) {
    const std::vector<double> weights{0.5, 0.5};
    const std::vector<double> means{-m, m};
    out.push_back(oracle_record(
        "mixture_entropy.pm" + relaylab::format_human(m), {{"means", means}, {"variance", 1.0}},
        relaylab::entropy_of_gaussian_mixture(weights, means, 1.0, {}),
        oracle::mixture_entropy_riemann(weights, means, 1.0, 1e-4, -m - 12.0, m + 12.0), 1e-9,
        "midpoint rule, step 1e-4"));
  }

  {
    const double a = -std::log2(oracle::normal_cdf_series(-1.0));
    const auto report = relaylab::halfspace_blowup_exact(1, a, 1.0, 1.0);
    const double rho = std::sqrt(2.0 * a * std::numbers::ln2) + 1.0;
    out.push_back(oracle_record("halfspace.n=1.r=1", {{"n", 1}, {"a", a}, {"r", 1.0}, {"noise", 1.0}},
                                report.measured, oracle::normal_cdf_series(-1.0 + rho), 1e-12,
                                "Taylor series of Phi at the shifted offset"));
  }
  {
    const int n = 5;
    const double a = 0.3;
    const double r = 0.5;
    const double noise = 2.0;
    const auto report = relaylab::ball_blowup_semianalytic(n, a, r, noise);
    const double rho0 = ball_radius_by_series(n, std::exp2(-n * a), noise);
    const double rho = std::sqrt(static_cast<double>(n)) *
                       (std::sqrt(2.0 * noise * a * std::numbers::ln2) + r);
    out.push_back(oracle_record("ball.n=5", {{"n", n}, {"a", a}, {"r", r}, {"noise", noise}},
                                report.measured,
                                oracle::chi_cdf_series((rho0 + rho) / std::sqrt(noise), n), 1e-9,
                                "bisection on the chi series, then the series at the enlarged radius"));
  }

  add_relay_records(out, "relay.sign_quantizer",
                    relaylab::ToyRelayCode{{-1.0, 1.0}, {0.0}, 1.0, std::nullopt}, 12.0);
  add_relay_records(out, "relay.uniform8",
                    relaylab::ToyRelayCode{relaylab::uniform_codebook(8, 1.0),
                                           relaylab::uniform_thresholds(8, -3.0, 3.0), 1.0, 1.0},
                    14.0);
  return out;
}

std::string goldens_text(const std::filesystem::path& corpus,
                         const std::vector<GoldenRecord>& records) {
  json files = json::object();
  files[kRelayCodesFile] = hex_digest(relay_codes_text());
  files[kSweepFile] = hex_digest(golden_sweep_text());
  for (const auto& name : kAuthoredFiles) files[name] = hex_digest(read_file(corpus / name));

  json list = json::array();
  for (const auto& r : records) {
    list.push_back({{"id", r.id},
                    {"input", r.input},
                    {"digest", r.digest()},
                    {"expected", r.expected},
                    {"tol", r.tol},
                    {"provenance", {{"kind", r.provenance}, {"method", r.method}, {"value", r.check}}}});
  }
  json doc{{"seed", relaylab::kCorpusSeed}, {"files", files}, {"records", list}};
  return doc.dump(2) + "\n";
}

}  // namespace golden
