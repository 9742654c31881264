// Command-line front end: paths and simulations of exponential-sum
// processes, moment/distribution/tail comparisons, CSV/JSON/SVG artifacts.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sumpaths/arith.hpp"
#include "sumpaths/artifacts.hpp"
#include "sumpaths/families.hpp"
#include "sumpaths/parallel.hpp"
#include "sumpaths/sato_tate.hpp"
#include "sumpaths/series.hpp"
#include "sumpaths/stats.hpp"

namespace fs = std::filesystem;
using namespace sumpaths;
using families::SumFamily;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0 = hardware default
  std::string output_dir = ".";
  std::string out_file;  // overrides the generated name when set

  unsigned effective_workers() const {
    return workers == 0 ? default_workers() : workers;
  }
};

SumFamily make_family(const std::string& name, std::uint64_t a,
                      std::uint64_t alpha, bool geometric) {
  SumFamily fam;
  if (name == "kloosterman") {
    fam = SumFamily::kloosterman(a);
  } else if (name == "kloosterman2") {
    fam = SumFamily::kloosterman2(alpha, a);
  } else if (name == "birch") {
    fam = SumFamily::birch(a);
  } else if (name == "kloosterman-shift") {
    fam = SumFamily::kloosterman_shift(a);
  } else {
    throw CLI::ValidationError("--family",
                               "unknown family '" + name + "'");
  }
  return geometric ? fam.geometric() : fam;
}

series::Variant make_variant(const std::string& name) {
  if (name == "standard") return series::Variant::standard;
  if (name == "shift-minus-one") return series::Variant::shift_minus_one;
  throw CLI::ValidationError("--variant", "unknown variant '" + name + "'");
}

stats::MomentSpec parse_moment_spec(const std::string& text) {
  stats::MomentSpec spec;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(';', pos);
    if (next == std::string::npos) next = text.size();
    const std::string part = text.substr(pos, next - pos);
    double t;
    unsigned n, m;
    if (std::sscanf(part.c_str(), "%lf:%u,%u", &t, &n, &m) != 3) {
      throw std::invalid_argument("bad moment spec component '" + part +
                                  "'; expected t:n,m");
    }
    spec.points.push_back({t, n, m});
    pos = next + 1;
  }
  spec.validate();
  if (spec.points.empty()) {
    throw std::invalid_argument("moment spec is empty");
  }
  return spec;
}

std::vector<double> parse_thresholds(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

std::string write_artifact(const GlobalOptions& g, const std::string& name,
                           const std::string& content) {
  fs::path path = g.out_file.empty() ? fs::path(g.output_dir) / name
                                     : fs::path(g.out_file);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file " + path.string());
  }
  out << content;
  out.close();
  std::cout << "wrote " << path.string() << "\n";
  return path.string();
}

std::string family_tag(const SumFamily& fam, std::uint64_t p) {
  std::string s = fam.name() + "_p" + std::to_string(p);
  if (fam.kind == families::Kind::kloosterman2) {
    s += "_alpha" + std::to_string(fam.alpha);
  }
  s += "_a" + std::to_string(fam.a);
  return s;
}

artifacts::Metadata family_meta(const GlobalOptions& g, const SumFamily& fam,
                                std::uint64_t p) {
  artifacts::Metadata meta;
  meta.seed = g.seed;
  meta.add("family", fam.name());
  meta.add("p", p);
  if (fam.kind == families::Kind::kloosterman2) meta.add("alpha", fam.alpha);
  meta.add("a", fam.a);
  return meta;
}

// ---- subcommand runners ----

int run_path(const GlobalOptions& g, const std::string& family,
             std::uint64_t p, std::uint64_t a, std::uint64_t alpha,
             bool geometric, const std::string& format) {
  const SumFamily fam = make_family(family, a, alpha, geometric);
  arith::FieldContext ctx(p);
  const auto path = families::partial_sum_vector(fam, ctx);
  auto meta = family_meta(g, fam, p);

  const std::string base = "path_" + family_tag(fam, p);
  if (format == "svg") {
    write_artifact(g, base + ".svg", artifacts::svg_path(path.vertices, meta));
  } else if (format == "csv") {
    write_artifact(g, base + ".csv", artifacts::csv_path(path.vertices, meta));
  } else if (format == "json") {
    auto rec = artifacts::base_record("path", meta);
    rec["vertices"] = path.vertices.size();
    rec["endpoint"] = artifacts::complex_json(path.vertices.back());
    rec["sup_norm"] = families::sup_norm(path);
    write_artifact(g, base + ".json", artifacts::dump_json(rec));
  } else {
    throw std::invalid_argument("unsupported format '" + format + "'");
  }
  return 0;
}

int run_simulate(const GlobalOptions& g, std::uint32_t m, std::uint32_t grid,
                 const std::string& variant_name, const std::string& format) {
  const auto variant = make_variant(variant_name);
  sato_tate::SatoTateSampler sampler(g.seed);
  const auto values = series::simulate_series_uniform(m, grid, variant, sampler);

  artifacts::Metadata meta;
  meta.seed = g.seed;
  meta.add("m", static_cast<std::uint64_t>(m));
  meta.add("grid", static_cast<std::uint64_t>(grid));
  meta.add("variant", variant_name);

  std::vector<double> ts(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    ts[j] = static_cast<double>(j) / static_cast<double>(grid);
  }
  const std::string base = "simulate_m" + std::to_string(m) + "_grid" +
                           std::to_string(grid) + "_seed" +
                           std::to_string(g.seed);
  if (format == "svg") {
    write_artifact(g, base + ".svg", artifacts::svg_path(values, meta));
  } else if (format == "csv") {
    write_artifact(g, base + ".csv", artifacts::csv_series(ts, values, meta));
  } else {
    throw std::invalid_argument("unsupported format '" + format + "'");
  }
  return 0;
}

int run_moments(const GlobalOptions& g, const std::string& family,
                std::uint64_t p, const std::string& spec_text,
                const std::string& theory, std::uint32_t H,
                std::uint64_t samples, std::uint32_t m_trunc) {
  const SumFamily fam = make_family(family, 1, 1, false);
  arith::FieldContext ctx(p);
  const auto spec = parse_moment_spec(spec_text);
  const cplx emp =
      stats::empirical_mixed_moment(fam, ctx, spec, g.effective_workers());

  artifacts::Metadata meta;
  meta.seed = g.seed;
  meta.add("spec", spec_text);
  auto rec = artifacts::base_record("mixed_moment", meta);
  rec["family"] = fam.name();
  rec["p"] = p;
  rec["value"] = artifacts::complex_json(emp);

  if (theory == "expansion") {
    const auto th = stats::theoretical_mixed_moment(spec, stats::ExpansionMethod{H});
    rec["theoretical"] = artifacts::complex_json(th.value);
    rec["error_estimate"] = th.error;
    rec["method"] = "expansion";
  } else if (theory == "mc") {
    stats::MonteCarloMethod mc;
    mc.samples = samples;
    mc.m = m_trunc;
    mc.seed = g.seed;
    mc.workers = g.effective_workers();
    const auto th = stats::theoretical_mixed_moment(spec, mc);
    rec["theoretical"] = artifacts::complex_json(th.value);
    rec["error_estimate"] = th.error;
    rec["method"] = "monte_carlo";
  } else if (theory != "none") {
    throw std::invalid_argument("unknown theory method '" + theory + "'");
  }

  write_artifact(g, "moments_" + family + "_p" + std::to_string(p) + ".json",
                 artifacts::dump_json(rec));
  return 0;
}

int run_dist(const GlobalOptions& g, const std::string& family, std::uint64_t p,
             double t0, std::uint64_t samples, std::uint32_t m) {
  const SumFamily fam = make_family(family, 1, 1, false);
  arith::FieldContext ctx(p);
  const auto emp =
      stats::empirical_point_samples(fam, ctx, t0, g.effective_workers());
  const auto sim = stats::simulated_point_samples(t0, m, samples, g.seed,
                                                  g.effective_workers());
  std::vector<double> emp_re(emp.size()), emp_im(emp.size());
  std::vector<double> sim_re(sim.size()), sim_im(sim.size());
  for (std::size_t i = 0; i < emp.size(); ++i) {
    emp_re[i] = emp[i].real();
    emp_im[i] = emp[i].imag();
  }
  for (std::size_t i = 0; i < sim.size(); ++i) {
    sim_re[i] = sim[i].real();
    sim_im[i] = sim[i].imag();
  }

  artifacts::Metadata meta;
  meta.seed = g.seed;
  meta.add("t0", t0);
  meta.add("samples", samples);
  meta.add("m", static_cast<std::uint64_t>(m));
  auto rec = artifacts::base_record("ks_distance", meta);
  rec["family"] = fam.name();
  rec["p"] = p;
  rec["value"]["ks_re"] = stats::ks_distance(emp_re, sim_re);
  rec["value"]["ks_im"] = stats::ks_distance(emp_im, sim_im);
  rec["empirical_samples"] = emp.size();
  rec["simulated_samples"] = sim.size();
  write_artifact(g, "dist_" + family + "_p" + std::to_string(p) + ".json",
                 artifacts::dump_json(rec));
  return 0;
}

int run_tails(const GlobalOptions& g, const std::string& source,
              const std::string& family, std::uint64_t p, std::uint32_t m,
              std::uint32_t grid, std::uint64_t samples,
              const std::string& thresholds_text, const std::string& format) {
  const auto thresholds = parse_thresholds(thresholds_text);
  stats::TailEstimate tail;
  artifacts::Metadata meta;
  meta.seed = g.seed;
  meta.add("source", source);
  std::string base = "tails_" + source;
  if (source == "empirical") {
    const SumFamily fam = make_family(family, 1, 1, false);
    arith::FieldContext ctx(p);
    tail = stats::sup_norm_tail_empirical(fam, ctx, thresholds,
                                          g.effective_workers());
    meta.add("family", fam.name());
    meta.add("p", p);
    base += "_" + family + "_p" + std::to_string(p);
  } else if (source == "simulated") {
    tail = stats::sup_norm_tail_simulated(m, grid, samples, g.seed, thresholds,
                                          g.effective_workers());
    meta.add("m", static_cast<std::uint64_t>(m));
    meta.add("grid", static_cast<std::uint64_t>(grid));
    meta.add("samples", samples);
    base += "_m" + std::to_string(m);
  } else {
    throw std::invalid_argument("unknown source '" + source + "'");
  }
  meta.add("thresholds", thresholds_text);

  if (format == "csv") {
    write_artifact(g, base + ".csv",
                   artifacts::csv_tails(tail.thresholds, tail.probabilities,
                                        tail.exceedances, meta));
  } else if (format == "json") {
    auto rec = artifacts::base_record("sup_norm_tail", meta);
    rec["thresholds"] = tail.thresholds;
    rec["probabilities"] = tail.probabilities;
    rec["exceedances"] = tail.exceedances;
    rec["samples"] = tail.samples;
    write_artifact(g, base + ".json", artifacts::dump_json(rec));
  } else {
    throw std::invalid_argument("unsupported format '" + format + "'");
  }
  return 0;
}

int run_shortsum(const GlobalOptions& g, const std::string& family,
                 std::uint64_t p, std::uint64_t start, std::uint64_t length,
                 std::uint32_t alpha) {
  const SumFamily fam = make_family(family, 1, 1, false);
  arith::FieldContext ctx(p);
  const stats::IntervalSpec interval{start, length};
  const double value = stats::short_sum_moment(fam, ctx, interval, alpha,
                                               g.effective_workers());
  artifacts::Metadata meta;
  meta.seed = g.seed;
  meta.add("start", start);
  meta.add("length", length);
  meta.add("alpha", static_cast<std::uint64_t>(alpha));
  auto rec = artifacts::base_record("short_sum_moment", meta);
  rec["family"] = fam.name();
  rec["p"] = p;
  rec["value"] = value;
  if (family == "kloosterman2" && alpha == 4) {
    rec["count_identity"] =
        stats::kloosterman2_fourth_moment_via_counts(ctx, interval);
  }
  write_artifact(g, "shortsum_" + family + "_p" + std::to_string(p) + ".json",
                 artifacts::dump_json(rec));
  return 0;
}

int run_sweep(const GlobalOptions& g, const std::string& family,
              std::uint64_t p, std::uint64_t alpha, bool geometric,
              const std::string& stat) {
  if (stat != "supnorm" && stat != "endpoint") {
    throw std::invalid_argument("unknown stat '" + stat + "'");
  }
  const SumFamily proto = make_family(family, 1, alpha, geometric);
  arith::FieldContext ctx(p);
  const auto chi = ctx.chi();
  const double norm = 1.0 / std::sqrt(static_cast<double>(p));

  const std::uint64_t n = p - 1;  // one-parameter sweep over a
  std::vector<cplx> endpoint(n);
  std::vector<double> sup(n);
  for_chunks(n, g.effective_workers(), 64,
             [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t w = b; w < e; ++w) {
      SumFamily fam = proto;
      fam.a = 1 + w;
      KahanCSum run;
      double max2 = 0.0;
      families::for_each_exponent(fam, ctx, [&](std::uint64_t k) {
        run.add(chi[k]);
        const cplx z = run.value();
        max2 = std::max(max2, z.real() * z.real() + z.imag() * z.imag());
      });
      endpoint[w] = run.value() * norm;
      sup[w] = std::sqrt(max2) * norm;
    }
  });

  auto meta = family_meta(g, proto, p);
  meta.add("stat", stat);
  std::string out = "# tool=sumpaths version=";
  out += artifacts::kToolVersion;
  out += " seed=" + std::to_string(g.seed) + " family=" + proto.name() +
         " p=" + std::to_string(p) + " stat=" + stat + "\n";
  if (stat == "supnorm") {
    out += "a,sup_norm\n";
    for (std::uint64_t w = 0; w < n; ++w) {
      out += std::to_string(w + 1) + "," + artifacts::format_double(sup[w]) + "\n";
    }
  } else {
    out += "a,re,im\n";
    for (std::uint64_t w = 0; w < n; ++w) {
      out += std::to_string(w + 1) + "," +
             artifacts::format_double(endpoint[w].real()) + "," +
             artifacts::format_double(endpoint[w].imag()) + "\n";
    }
  }
  write_artifact(g, "sweep_" + family_tag(proto, p) + "_" + stat + ".csv", out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-sum paths of complete exponential sums and their "
               "limiting random Fourier series"};
  app.set_version_flag("--version",
                       std::string("sumpaths ") + artifacts::kToolVersion);
  app.set_config("--config");
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master seed recorded in every artifact");
  app.add_option("--workers", g.workers, "Worker threads (0 = hardware)");
  app.add_option("--output-dir", g.output_dir, "Artifact directory")
      ->envname("SUMPATHS_OUTPUT_DIR");
  app.add_option("--out", g.out_file, "Exact output file (overrides naming)");

  std::string family = "kloosterman", format = "csv", variant = "standard";
  std::string spec_text, theory = "none", source = "simulated", stat = "supnorm";
  std::string thresholds = "1.0,1.5,2.0";
  std::uint64_t p = 101, a = 1, alpha = 1, samples = 10000, start = 1, length = 0;
  std::uint32_t m = 1000, grid = 1024, H = 1000, alpha_exp = 4;
  double t0 = 0.5;
  bool geometric = false;

  auto* cmd_path = app.add_subcommand("path", "Partial-sum path of one family member");
  cmd_path->add_option("--family", family, "kloosterman|kloosterman2|birch|kloosterman-shift");
  cmd_path->add_option("--p", p, "Odd prime modulus")->required();
  cmd_path->add_option("--a", a, "Family parameter a");
  cmd_path->add_option("--alpha", alpha, "Second parameter (kloosterman2)");
  cmd_path->add_flag("--geometric", geometric, "Order summands by a primitive root");
  cmd_path->add_option("--format", format, "svg|csv|json");

  auto* cmd_sim = app.add_subcommand("simulate", "One realization of the limit series");
  cmd_sim->add_option("--m", m, "Symmetric truncation |h| < m")->required();
  cmd_sim->add_option("--grid", grid, "Uniform grid size")->required();
  cmd_sim->add_option("--variant", variant, "standard|shift-minus-one");
  cmd_sim->add_option("--format", format, "svg|csv");

  auto* cmd_mom = app.add_subcommand("moments", "Empirical/theoretical mixed moments");
  cmd_mom->add_option("--family", family);
  cmd_mom->add_option("--p", p)->required();
  cmd_mom->add_option("--spec", spec_text, "t:n,m[;t:n,m...]")->required();
  cmd_mom->add_option("--theory", theory, "none|expansion|mc");
  cmd_mom->add_option("--H", H, "Expansion truncation");
  cmd_mom->add_option("--samples", samples, "Monte-Carlo sample count");
  cmd_mom->add_option("--m-trunc", m, "Monte-Carlo series truncation");

  auto* cmd_dist = app.add_subcommand("dist", "KS distance to the simulated limit at t0");
  cmd_dist->add_option("--family", family);
  cmd_dist->add_option("--p", p)->required();
  cmd_dist->add_option("--t0", t0);
  cmd_dist->add_option("--samples", samples, "Simulated draws");
  cmd_dist->add_option("--m", m, "Series truncation");

  auto* cmd_tails = app.add_subcommand("tails", "Sup-norm tail estimates");
  cmd_tails->add_option("--source", source, "empirical|simulated");
  cmd_tails->add_option("--family", family);
  cmd_tails->add_option("--p", p);
  cmd_tails->add_option("--m", m);
  cmd_tails->add_option("--grid", grid);
  cmd_tails->add_option("--samples", samples);
  cmd_tails->add_option("--thresholds", thresholds, "Comma-separated increasing");
  cmd_tails->add_option("--format", format, "csv|json");

  auto* cmd_short = app.add_subcommand("shortsum", "Averaged short-interval moment");
  cmd_short->add_option("--family", family);
  cmd_short->add_option("--p", p)->required();
  cmd_short->add_option("--start", start)->required();
  cmd_short->add_option("--length", length)->required();
  cmd_short->add_option("--alpha", alpha_exp, "Even moment order");

  auto* cmd_sweep = app.add_subcommand("sweep", "Per-parameter path statistics over F_p^*");
  cmd_sweep->add_option("--family", family);
  cmd_sweep->add_option("--p", p)->required();
  cmd_sweep->add_option("--alpha", alpha, "Second parameter (kloosterman2)");
  cmd_sweep->add_flag("--geometric", geometric);
  cmd_sweep->add_option("--stat", stat, "supnorm|endpoint");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_path)) {
      return run_path(g, family, p, a, alpha, geometric, format);
    }
    if (app.got_subcommand(cmd_sim)) {
      return run_simulate(g, m, grid, variant, format);
    }
    if (app.got_subcommand(cmd_mom)) {
      return run_moments(g, family, p, spec_text, theory, H, samples, m);
    }
    if (app.got_subcommand(cmd_dist)) {
      return run_dist(g, family, p, t0, samples, m);
    }
    if (app.got_subcommand(cmd_tails)) {
      return run_tails(g, source, family, p, m, grid, samples, thresholds,
                       format);
    }
    if (app.got_subcommand(cmd_short)) {
      return run_shortsum(g, family, p, start, length, alpha_exp);
    }
    if (app.got_subcommand(cmd_sweep)) {
      return run_sweep(g, family, p, alpha, geometric, stat);
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
