// pmpcert: certify periodic-monotonicity preservation of the impulse-response
// autocorrelation of a stable LTI system and verify the implied frequency
// response gain monotonicity.
//
// Exit codes: 0 certified/holds, 1 failed, 2 inconclusive or search failure,
// 3 IO/parse error, 4 internal inconsistency between certificate and sweep.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pmpcert/certificates.hpp"
#include "pmpcert/gain.hpp"
#include "pmpcert/signals.hpp"
#include "pmpcert/system_io.hpp"

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitIo = 3;
constexpr int kExitInconsistent = 4;

struct Options {
  std::string spec_path;
  std::string out_dir = ".";
  double t_max = 0.0;  // 0 = auto (20/sigma)
  int grid_n = 4096;
  double eps = pmpcert::kEvalEps;
  double sweep_lo = 0.0;  // 0 = auto (1e-2 sigma)
  double sweep_hi = 0.0;  // 0 = auto (1e2 sigma)
  int sweep_points = 2000;
  int k_max = 8;
  double omega = 1.0;
  int harmonic = 2;
  double tol = 1e-4;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw pmpcert::ParseError("cannot write '" + path + "'");
  }
  out << content;
}

void emit_condition(std::ostringstream& rep, const pmpcert::ConditionResult& c) {
  rep << "condition." << c.name << ".verdict: " << to_string(c.verdict) << "\n";
  rep << "condition." << c.name << ".min_margin: " << fmt(c.min_margin) << "\n";
  rep << "condition." << c.name << ".argmin_t: " << fmt(c.argmin_t) << "\n";
  rep << "condition." << c.name << ".tail_note: " << c.tail_note << "\n";
}

void emit_header(std::ostringstream& rep, const std::string& command,
                 const pmpcert::SystemSpec& spec) {
  rep << "tool: pmpcert\n";
  rep << "command: " << command << "\n";
  if (!spec.label.empty()) rep << "label: " << spec.label << "\n";
  rep << "system.n: " << spec.sys.dim() << "\n";
}

pmpcert::CheckGrid make_grid(const Options& opt) {
  pmpcert::CheckGrid grid;
  grid.t_max = opt.t_max;
  grid.points = opt.grid_n;
  grid.eval_eps = opt.eps;
  return grid;
}

int cmd_certify(const Options& opt) {
  const pmpcert::SystemSpec spec = pmpcert::parse_system_file(opt.spec_path);
  const pmpcert::AutocorrelationModel model = pmpcert::build_autocorr(spec.sys);
  const pmpcert::CheckGrid grid = make_grid(opt);
  const pmpcert::PmpCertificate cert = pmpcert::certify_pmp(model, grid);

  std::ostringstream rep;
  emit_header(rep, "certify", spec);
  rep << "grid.t_max: " << fmt(grid.resolved_t_max(model.spectral)) << "\n";
  rep << "grid.points: " << grid.points << "\n";
  rep << "grid.eval_eps: " << fmt(grid.eval_eps) << "\n";
  rep << "gramian.r0: " << fmt(model.r0) << "\n";
  emit_condition(rep, cert.logconv_der);
  emit_condition(rep, cert.convexity);
  emit_condition(rep, cert.logconcavity);
  rep << "verdict: " << to_string(cert.verdict) << "\n";
  write_file(opt.out_dir, "certify_report.txt", rep.str());
  std::cout << rep.str();

  switch (cert.verdict) {
    case pmpcert::PmpVerdict::certified_via_i:
    case pmpcert::PmpVerdict::certified_via_ii:
      return kExitHolds;
    case pmpcert::PmpVerdict::failed:
      return kExitFailed;
    default:
      return kExitInconclusive;
  }
}

void emit_report_pairs(std::ostringstream& rep, const std::string& prefix,
                       const pmpcert::MonotonicityReport& r) {
  rep << prefix << ".verdict: " << (r.holds ? "holds" : "violated") << "\n";
  rep << prefix << ".base_omega: " << fmt(r.base_omega) << "\n";
  for (const auto& w : r.witnesses) {
    rep << prefix << ".witness: k=" << w.k << " base=" << fmt(w.mag_base)
        << " high=" << fmt(w.mag_high) << " slack=" << fmt(w.slack) << "\n";
  }
}

int cmd_verify_gain(const Options& opt) {
  const pmpcert::SystemSpec spec = pmpcert::parse_system_file(opt.spec_path);
  const double sigma = pmpcert::estimate_decay_bound(spec.sys.A).sigma;
  const double lo = opt.sweep_lo > 0.0 ? opt.sweep_lo : 1e-2 * sigma;
  const double hi = opt.sweep_hi > 0.0 ? opt.sweep_hi : 1e2 * sigma;

  std::ostringstream rep;
  emit_header(rep, "verify-gain", spec);
  rep << "sweep.lo: " << fmt(lo) << "\n";
  rep << "sweep.hi: " << fmt(hi) << "\n";
  rep << "sweep.points: " << opt.sweep_points << "\n";
  rep << "sweep.defaults_applied: "
      << ((opt.sweep_lo > 0.0 || opt.sweep_hi > 0.0) ? "no" : "yes") << "\n";
  rep << "k_max: " << opt.k_max << "\n";

  bool all_hold = true;
  // Harmonic dominance over a log grid of base frequencies.
  for (int i = 0; i < 50; ++i) {
    const double w = lo * std::pow(hi / lo, i / 49.0);
    const auto r =
        pmpcert::harmonic_dominance_check(spec.sys, w, opt.k_max, opt.eps);
    if (!r.holds) {
      all_hold = false;
      emit_report_pairs(rep, "harmonic_dominance[omega=" + fmt12(w) + "]", r);
    }
  }
  rep << "harmonic_dominance.verdict: " << (all_hold ? "holds" : "violated")
      << "\n";
  const auto octave =
      pmpcert::octave_monotonicity_check(spec.sys, sigma, -4, 8, opt.eps);
  emit_report_pairs(rep, "octave_monotonicity", octave);
  all_hold = all_hold && octave.holds;

  const pmpcert::GainSweep sweep = pmpcert::gain_sweep(
      spec.sys, lo, hi, opt.sweep_points, pmpcert::SweepSpacing::log);
  std::ostringstream csv;
  csv << "omega,re,im,magnitude\n";
  for (size_t i = 0; i < sweep.frequencies.size(); ++i) {
    csv << fmt12(sweep.frequencies[i]) << "," << fmt12(sweep.responses[i].real())
        << "," << fmt12(sweep.responses[i].imag()) << ","
        << fmt12(sweep.magnitudes[i]) << "\n";
  }
  write_file(opt.out_dir, "gain_sweep.csv", csv.str());
  rep << "sweep.csv: gain_sweep.csv\n";
  rep << "verdict: " << (all_hold ? "holds" : "violated") << "\n";
  write_file(opt.out_dir, "verify_gain_report.txt", rep.str());
  std::cout << rep.str();
  return all_hold ? kExitHolds : kExitFailed;
}

int cmd_posdom(const Options& opt) {
  const pmpcert::SystemSpec spec = pmpcert::parse_system_file(opt.spec_path);
  const pmpcert::CheckGrid grid = make_grid(opt);
  const auto cert = pmpcert::check_positive_domination(spec.sys, grid);

  const double sigma = pmpcert::estimate_decay_bound(spec.sys.A).sigma;
  const double lo = opt.sweep_lo > 0.0 ? opt.sweep_lo : 1e-2 * sigma;
  const double hi = opt.sweep_hi > 0.0 ? opt.sweep_hi : 1e2 * sigma;
  std::vector<double> omegas(opt.sweep_points);
  for (int i = 0; i < opt.sweep_points; ++i) {
    omegas[i] = lo * std::pow(hi / lo, static_cast<double>(i) /
                                           (opt.sweep_points - 1));
  }
  const auto sweep = pmpcert::positive_domination_verify(spec.sys, omegas,
                                                         opt.eps);
  std::ostringstream rep;
  emit_header(rep, "posdom", spec);
  emit_condition(rep, cert);
  emit_report_pairs(rep, "gain_verification", sweep);
  const bool cert_holds = cert.verdict == pmpcert::Verdict::holds;
  std::string verdict;
  int code;
  if (cert_holds && sweep.holds) {
    verdict = "positively-dominated";
    code = kExitHolds;
  } else if (cert_holds && !sweep.holds) {
    verdict = "internal-inconsistency";
    code = kExitInconsistent;
  } else if (cert.verdict == pmpcert::Verdict::fails) {
    verdict = "certificate-failed";
    code = kExitFailed;
  } else {
    verdict = "inconclusive";
    code = kExitInconclusive;
  }
  rep << "verdict: " << verdict << "\n";
  write_file(opt.out_dir, "posdom_report.txt", rep.str());
  std::cout << rep.str();
  return code;
}

int cmd_lemma_input(const Options& opt) {
  const int samples = 256 * opt.harmonic;
  std::ostringstream rep;
  rep << "tool: pmpcert\n";
  rep << "command: lemma-input\n";
  rep << "omega: " << fmt(opt.omega) << "\n";
  rep << "k: " << opt.harmonic << "\n";
  rep << "samples: " << samples << "\n";
  rep << "tol: " << fmt(opt.tol) << "\n";
  double a_bar;
  try {
    a_bar = pmpcert::max_pm_amplitude(opt.omega, opt.harmonic, samples, opt.tol);
  } catch (const pmpcert::NumericalError& e) {
    rep << "error: " << e.what() << "\n";
    write_file(opt.out_dir, "lemma_input_report.txt", rep.str());
    std::cout << rep.str();
    return kExitInconclusive;
  }
  rep << "a_bar: " << fmt(a_bar) << "\n";
  if (!opt.spec_path.empty()) {
    const pmpcert::SystemSpec spec = pmpcert::parse_system_file(opt.spec_path);
    const double m1 = std::abs(pmpcert::freq_response(spec.sys, opt.omega));
    const double mk =
        std::abs(pmpcert::freq_response(spec.sys, opt.harmonic * opt.omega));
    const double ratio = (mk * mk) / (m1 * m1);
    rep << "gain.base: " << fmt(m1) << "\n";
    rep << "gain.harmonic: " << fmt(mk) << "\n";
    rep << "ratio: " << fmt(ratio) << "\n";
    rep << "b: " << fmt(a_bar * ratio) << "\n";
    rep << "b_le_a_bar: " << (a_bar * ratio <= a_bar ? "yes" : "no") << "\n";
  }
  write_file(opt.out_dir, "lemma_input_report.txt", rep.str());
  std::cout << rep.str();
  return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PMP certification and gain-monotonicity verification for "
               "stable LTI systems"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool spec_required) {
    auto* s = sub->add_option("--spec", opt.spec_path, "system spec file");
    if (spec_required) s->required();
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--t-max", opt.t_max, "grid horizon (default 20/sigma)");
    sub->add_option("--grid-n", opt.grid_n, "grid points");
    sub->add_option("--eps", opt.eps, "decision tolerance");
    sub->add_option("--sweep-lo", opt.sweep_lo, "sweep start (rad/s)");
    sub->add_option("--sweep-hi", opt.sweep_hi, "sweep end (rad/s)");
    sub->add_option("--sweep-points", opt.sweep_points, "sweep points");
    sub->add_option("--k-max", opt.k_max, "max harmonic index");
  };

  auto* certify = app.add_subcommand("certify", "PMP certificate for R_gg^T");
  add_common(certify, true);
  auto* verify = app.add_subcommand(
      "verify-gain", "harmonic dominance, octave chain and gain sweep");
  add_common(verify, true);
  auto* posdom =
      app.add_subcommand("posdom", "positive domination certificate + sweep");
  add_common(posdom, true);
  auto* lemma = app.add_subcommand(
      "lemma-input", "largest PMP-preserving amplitude a_bar");
  add_common(lemma, false);
  lemma->add_option("--omega", opt.omega, "base frequency (rad/s)");
  lemma->add_option("--k", opt.harmonic, "harmonic index (>= 2)");
  lemma->add_option("--tol", opt.tol, "bisection tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (certify->parsed()) return cmd_certify(opt);
    if (verify->parsed()) return cmd_verify_gain(opt);
    if (posdom->parsed()) return cmd_posdom(opt);
    if (lemma->parsed()) return cmd_lemma_input(opt);
  } catch (const pmpcert::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconclusive;
  }
  return kExitIo;
}
