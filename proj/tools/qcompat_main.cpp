// qcompat: compatibility of unbiased binary qubit measurements with unital
// channels, the induced disturbance measures, and tradeoff-curve data.
//
// Exit codes: 0 success, 1 verification violation, 2 usage/validation error.
// JSON goes to stdout (or --out); human-readable summaries go to stderr.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcompat/compatibility.hpp"
#include "qcompat/io.hpp"
#include "qcompat/measures.hpp"
#include "qcompat/tradeoffs.hpp"
#include "qcompat/verify.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

using nlohmann::ordered_json;
using namespace qcompat;

std::vector<double> parse_csv_doubles(const std::string& text, size_t expected, const std::string& flag) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string tok = text.substr(pos, comma - pos);
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
      throw std::invalid_argument(flag + ": malformed number '" + tok + "'");
    out.push_back(v);
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  if (out.size() != expected) {
    std::ostringstream os;
    os << flag << ": expected " << expected << " comma-separated values, got " << out.size();
    throw std::invalid_argument(os.str());
  }
  return out;
}

// Probability vectors are validated before any normalization: components
// below -1e-9 or a sum off 1 by more than 1e-9 are rejected outright; inputs
// inside those tolerances are scaled to an exact unit sum.
PauliProbabilities parse_probabilities(const std::string& text) {
  const auto v = parse_csv_doubles(text, 4, "--p");
  double sum = 0.0;
  for (size_t i = 0; i < 4; ++i) {
    if (v[i] < -1e-9) {
      std::ostringstream os;
      os << "--p: component " << i << " = " << v[i] << " violates nonnegativity";
      throw std::invalid_argument(os.str());
    }
    sum += v[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "--p: sum " << sum << " violates normalization (|sum - 1| > 1e-9)";
    throw std::invalid_argument(os.str());
  }
  std::array<double, 4> p{};
  for (size_t i = 0; i < 4; ++i) p[i] = std::max(v[i], 0.0) / sum;
  return PauliProbabilities(p);
}

Direction parse_direction(const std::string& text) {
  const auto v = parse_csv_doubles(text, 3, "--n");
  return Direction({v[0], v[1], v[2]});
}

Rotation3 parse_rotation(const std::string& text, const std::string& flag) {
  const auto v = parse_csv_doubles(text, 9, flag);
  Mat3 m{};
  std::copy(v.begin(), v.end(), m.begin());
  return Rotation3(m);
}

Mat3 parse_mat3(const std::string& text, const std::string& flag) {
  const auto v = parse_csv_doubles(text, 9, flag);
  Mat3 m{};
  std::copy(v.begin(), v.end(), m.begin());
  return m;
}

// Data goes to --out (with a sibling manifest) or to stdout (manifest on
// stderr, keeping the machine surface clean).
void emit(const std::string& data, const std::optional<std::string>& out_path, const RunManifest& manifest) {
  if (out_path) {
    std::ofstream f(*out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + *out_path);
    f << data;
    write_manifest(*out_path, manifest);
    std::cerr << "wrote " << *out_path << " and " << *out_path << ".manifest.json\n";
  } else {
    std::cout << data;
    std::cerr << manifest.to_json().dump() << "\n";
  }
}

ordered_json verdict_json(const CompatVerdict& verdict, bool in_polytope) {
  ordered_json j;
  j["compatible"] = verdict.compatible;
  j["lhs"] = json_number(verdict.lhs);
  j["p_values"] = {json_number(verdict.p_values[0]), json_number(verdict.p_values[1]), json_number(verdict.p_values[2])};
  j["p_max"] = json_number(verdict.p_values.max());
  j["polytope_member"] = in_polytope;
  return j;
}

int cmd_check(const std::string& p_text, double s, const std::string& n_text,
              const std::optional<std::string>& rin_text, const std::optional<std::string>& rout_text,
              const std::optional<std::string>& out_path) {
  const PauliProbabilities p = parse_probabilities(p_text);
  const Direction n = parse_direction(n_text);
  const Rotation3 rin = rin_text ? parse_rotation(*rin_text, "--rin") : Rotation3::identity();
  const Rotation3 rout = rout_text ? parse_rotation(*rout_text, "--rout") : Rotation3::identity();
  const UnitalChannel channel(rout, p, rin);
  const BinaryMeasurement m(s, n);

  const CompatVerdict verdict = is_compatible_unital(channel, m);
  const bool member = CompatibilityPolytope(s).contains(channel.pauli_weights());
  const ordered_json j = verdict_json(verdict, member);

  RunManifest manifest{"check", {}, 0, kToolVersion};
  manifest.parameters["p"] = p_text;
  manifest.parameters["s"] = json_number(s);
  manifest.parameters["n"] = n_text;
  if (rin_text) manifest.parameters["rin"] = *rin_text;
  if (rout_text) manifest.parameters["rout"] = *rout_text;

  emit(j.dump(2) + "\n", out_path, manifest);
  std::cerr << (verdict.compatible ? "compatible" : "incompatible") << " (lhs = " << format_double(verdict.lhs)
            << ")\n";
  return 0;
}

int cmd_info(const std::optional<std::string>& p_text, const std::optional<std::string>& bloch_text,
             const std::optional<std::string>& out_path) {
  if (static_cast<bool>(p_text) == static_cast<bool>(bloch_text))
    throw std::invalid_argument("info: provide exactly one of --p or --bloch");

  MeasureReport report;
  RunManifest manifest{"info", {}, 0, kToolVersion};
  if (p_text) {
    report = measure_report(parse_probabilities(*p_text));
    manifest.parameters["p"] = *p_text;
  } else {
    report = measure_report(UnitalChannel::from_bloch(parse_mat3(*bloch_text, "--bloch")));
    manifest.parameters["bloch"] = *bloch_text;
  }

  ordered_json j;
  j["avg_fidelity"] = json_number(report.avg_fidelity);
  j["corrected_fidelity"] = json_number(report.corrected_fidelity);
  j["quantumness"] = json_number(report.quantumness);
  j["lqu"] = json_number(report.lqu);
  j["p_values"] = {json_number(report.p_values[0]), json_number(report.p_values[1]), json_number(report.p_values[2])};
  j["p_max"] = json_number(report.p_max);
  j["max_sharpness"] = json_number(report.max_sharpness);

  emit(j.dump(2) + "\n", out_path, manifest);
  return 0;
}

int cmd_scan(const std::string& kind_text, int s_steps, const SearchConfig& cfg, uint64_t seed,
             const std::optional<std::string>& out_path, const std::string& format) {
  TradeoffKind kind;
  if (kind_text == "fidelity") kind = TradeoffKind::fidelity;
  else if (kind_text == "quantumness") kind = TradeoffKind::quantumness;
  else if (kind_text == "lqu") kind = TradeoffKind::lqu;
  else throw std::invalid_argument("scan: unknown kind '" + kind_text + "' (use fidelity|quantumness|lqu)");

  const auto points = tradeoff_scan(kind, s_steps, cfg);

  std::string data;
  if (format == "csv") {
    std::ostringstream os;
    os << "s,closed_form,searched,gap,grid_resolution\n";
    for (const auto& pt : points)
      os << format_double(pt.s) << ',' << format_double(pt.closed_form) << ',' << format_double(pt.searched) << ','
         << format_double(pt.gap) << ',' << pt.grid_resolution << "\n";
    data = os.str();
  } else {
    ordered_json rows = ordered_json::array();
    for (const auto& pt : points) {
      ordered_json r;
      r["s"] = json_number(pt.s);
      r["closed_form"] = json_number(pt.closed_form);
      r["searched"] = json_number(pt.searched);
      r["gap"] = json_number(pt.gap);
      r["grid_resolution"] = pt.grid_resolution;
      rows.push_back(std::move(r));
    }
    data = rows.dump(2) + "\n";
  }

  RunManifest manifest{"scan", {}, seed, kToolVersion};
  manifest.parameters["kind"] = kind_text;
  manifest.parameters["s_steps"] = s_steps;
  manifest.parameters["grid"] = cfg.simplex_grid;
  manifest.parameters["direction_grid"] = cfg.direction_grid;
  manifest.parameters["refine_steps"] = cfg.refine_steps;
  manifest.parameters["format"] = format;
  emit(data, out_path, manifest);
  return 0;
}

int cmd_region(const std::string& p_unused, double s, const std::string& n_text, int grid, uint64_t seed,
               const std::optional<std::string>& out_path, const std::string& format) {
  (void)p_unused;
  if (grid < 1) throw std::invalid_argument("region: --grid must be positive");
  const Direction n = parse_direction(n_text);
  const BinaryMeasurement m(s, n);
  const CompatibilityPolytope poly(s);

  struct Row {
    std::array<double, 4> p;
    double lhs;
    bool compatible, in_polytope;
  };
  std::vector<Row> rows;
  for (int a = 0; a <= grid; ++a)
    for (int b = 0; a + b <= grid; ++b)
      for (int c = 0; a + b + c <= grid; ++c) {
        const int d = grid - a - b - c;
        const PauliProbabilities p({static_cast<double>(a) / grid, static_cast<double>(b) / grid,
                                    static_cast<double>(c) / grid, static_cast<double>(d) / grid});
        const auto verdict = is_compatible_pauli(p, m);
        rows.push_back({p.values(), verdict.lhs, verdict.compatible, poly.contains(p)});
      }

  std::string data;
  if (format == "csv") {
    std::ostringstream os;
    os << "p0,p1,p2,p3,lhs,compatible,in_polytope\n";
    for (const auto& r : rows) {
      os << format_double(r.p[0]) << ',' << format_double(r.p[1]) << ',' << format_double(r.p[2]) << ','
         << format_double(r.p[3]) << ',' << format_double(r.lhs) << ',' << (r.compatible ? "true" : "false") << ','
         << (r.in_polytope ? "true" : "false") << "\n";
    }
    data = os.str();
  } else {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j;
      j["p0"] = json_number(r.p[0]);
      j["p1"] = json_number(r.p[1]);
      j["p2"] = json_number(r.p[2]);
      j["p3"] = json_number(r.p[3]);
      j["lhs"] = json_number(r.lhs);
      j["compatible"] = r.compatible;
      j["in_polytope"] = r.in_polytope;
      arr.push_back(std::move(j));
    }
    data = arr.dump(2) + "\n";
  }

  RunManifest manifest{"region", {}, seed, kToolVersion};
  manifest.parameters["s"] = json_number(s);
  manifest.parameters["n"] = n_text;
  manifest.parameters["grid"] = grid;
  manifest.parameters["format"] = format;
  emit(data, out_path, manifest);
  return 0;
}

int cmd_sample(uint64_t seed, uint64_t samples, const std::optional<std::string>& out_path,
               const std::string& format) {
  if (samples == 0) throw std::invalid_argument("sample: --samples must be positive");
  HaarSampler sampler(seed);

  std::string data;
  if (format == "csv") {
    std::ostringstream os;
    os << "rx,ry,rz\n";
    for (uint64_t i = 0; i < samples; ++i) {
      const Vec3 r = sampler.bloch(i);
      os << format_double(r[0]) << ',' << format_double(r[1]) << ',' << format_double(r[2]) << "\n";
    }
    data = os.str();
  } else {
    ordered_json arr = ordered_json::array();
    for (uint64_t i = 0; i < samples; ++i) {
      const Vec3 r = sampler.bloch(i);
      arr.push_back({json_number(r[0]), json_number(r[1]), json_number(r[2])});
    }
    data = arr.dump(2) + "\n";
  }

  RunManifest manifest{"sample", {}, seed, kToolVersion};
  manifest.parameters["samples"] = samples;
  manifest.parameters["format"] = format;
  emit(data, out_path, manifest);
  return 0;
}

int cmd_verify(const std::string& suite, uint64_t seed, uint64_t samples,
               const std::optional<std::string>& out_path) {
  const auto results = verify_suite(suite, seed, samples);

  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::cerr << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  residual=" << format_double(r.residual);
    if (!r.detail.empty()) std::cerr << "  (" << r.detail << ")";
    std::cerr << "\n";
  }
  std::cerr << (all_pass ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";

  ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["samples"] = samples;
  j["all_pass"] = all_pass;
  ordered_json checks = ordered_json::array();
  for (const auto& r : results) {
    ordered_json c;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["residual"] = json_number(r.residual);
    c["detail"] = r.detail;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);

  RunManifest manifest{"verify", {}, seed, kToolVersion};
  manifest.parameters["suite"] = suite;
  manifest.parameters["samples"] = samples;
  emit(j.dump(2) + "\n", out_path, manifest);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compatibility and disturbance toolkit for binary qubit measurements and unital channels"};
  app.require_subcommand(1);

  std::string p_text, n_text = "1,0,0", format = "csv", kind, suite = "all", bloch_text, rin_text, rout_text;
  bool have_p = false, have_bloch = false, have_rin = false, have_rout = false;
  std::string out_path;
  bool have_out = false;
  double s = 0.0;
  int s_steps = 11, grid = 20;
  uint64_t seed = 1, samples = 100000;
  SearchConfig cfg;

  auto out_opt = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "write data to this file (plus a sibling .manifest.json)")
        ->each([&](const std::string&) { have_out = true; });
  };
  auto format_opt = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* check = app.add_subcommand("check", "decide channel-measurement compatibility");
  check->add_option("--p", p_text, "Pauli weights p0,p1,p2,p3")->required();
  check->add_option("--s", s, "measurement sharpness in [0,1]")->required();
  check->add_option("--n", n_text, "measurement direction nx,ny,nz (unit norm)")->required();
  check->add_option("--rin", rin_text, "input rotation, 9 row-major entries")
      ->each([&](const std::string&) { have_rin = true; });
  check->add_option("--rout", rout_text, "output rotation, 9 row-major entries")
      ->each([&](const std::string&) { have_rout = true; });
  out_opt(check);

  CLI::App* info = app.add_subcommand("info", "disturbance measures of a channel");
  info->add_option("--p", p_text, "Pauli weights p0,p1,p2,p3")->each([&](const std::string&) { have_p = true; });
  info->add_option("--bloch", bloch_text, "Bloch matrix, 9 row-major entries")
      ->each([&](const std::string&) { have_bloch = true; });
  out_opt(info);

  CLI::App* scan = app.add_subcommand("scan", "tradeoff curve: closed form vs grid search");
  scan->add_option("kind", kind, "fidelity | quantumness | lqu")->required();
  scan->add_option("--s-steps", s_steps, "number of sharpness values in [0,1]");
  scan->add_option("--grid", cfg.simplex_grid, "simplex lattice subdivisions per edge");
  scan->add_option("--direction-grid", cfg.direction_grid, "extra effective-direction sweep size");
  scan->add_option("--refine-steps", cfg.refine_steps, "local refinement passes");
  scan->add_option("--seed", seed, "recorded in the manifest");
  out_opt(scan);
  format_opt(scan);

  CLI::App* region = app.add_subcommand("region", "compatibility verdict on a simplex lattice");
  region->add_option("--s", s, "measurement sharpness in [0,1]")->required();
  region->add_option("--n", n_text, "measurement direction nx,ny,nz (unit norm)")->required();
  region->add_option("--grid", grid, "simplex lattice subdivisions per edge");
  region->add_option("--seed", seed, "recorded in the manifest");
  out_opt(region);
  format_opt(region);

  CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("suite", suite, "all | identities | theorems | oracles");
  verify->add_option("--seed", seed, "base seed for all sampled checks");
  verify->add_option("--samples", samples, "sample count for the statistical checks");
  out_opt(verify);

  CLI::App* sample = app.add_subcommand("sample", "emit Haar-uniform Bloch vectors");
  sample->add_option("--seed", seed, "stream seed");
  sample->add_option("--samples", samples, "number of states");
  out_opt(sample);
  format_opt(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto out = have_out ? std::optional<std::string>(out_path) : std::nullopt;
  try {
    if (app.got_subcommand(check))
      return cmd_check(p_text, s, n_text, have_rin ? std::optional<std::string>(rin_text) : std::nullopt,
                       have_rout ? std::optional<std::string>(rout_text) : std::nullopt, out);
    if (app.got_subcommand(info))
      return cmd_info(have_p ? std::optional<std::string>(p_text) : std::nullopt,
                      have_bloch ? std::optional<std::string>(bloch_text) : std::nullopt, out);
    if (app.got_subcommand(scan)) return cmd_scan(kind, s_steps, cfg, seed, out, format);
    if (app.got_subcommand(region)) return cmd_region("", s, n_text, grid, seed, out, format);
    if (app.got_subcommand(verify)) return cmd_verify(suite, seed, samples, out);
    if (app.got_subcommand(sample)) return cmd_sample(seed, samples, out, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
