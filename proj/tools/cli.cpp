// Copyright 2026 The dexpr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dexpr/circuit.hpp"
#include "dexpr/circuit_io.hpp"
#include "dexpr/dea.hpp"
#include "dexpr/device.hpp"
#include "dexpr/errors.hpp"
#include "dexpr/momentum.hpp"
#include "dexpr/random.hpp"
#include "dexpr/report.hpp"
#include "dexpr/symmetry.hpp"
#include "dexpr/vqs.hpp"

namespace dexpr::cli {
namespace {

using nlohmann::json;

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string label(unsigned slot) { return "θ" + std::to_string(slot + 1); }

std::string labels(const std::vector<unsigned>& slots) {
  std::string s = "{";
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (i) s += ", ";
    s += label(slots[i]);
  }
  return s + "}";
}

// Options shared by the circuit commands.
struct CircuitArgs {
  std::string path;
  std::string theta = "zero";
  std::uint64_t seed = 0;
  std::string json_path;
  unsigned jobs = 1;
  double threshold = 1e-10;
};

void add_circuit_args(CLI::App* sub, CircuitArgs& a) {
  sub->add_option("circuit", a.path, "circuit file (JSON)")->required();
  sub->add_option("--theta", a.theta, "zero, random, or a file with the angles");
  sub->add_option("--seed", a.seed, "seed for --theta random");
  sub->add_option("--json", a.json_path, "write the machine report here");
  sub->add_option("--jobs", a.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--threshold", a.threshold, "minimum-eigenvalue threshold");
}

ParameterPoint load_theta(const CircuitArgs& a, const ParametricCircuit& c) {
  if (a.theta == "zero") return ParameterPoint::Zero(c.num_params());
  if (a.theta == "random") return random_point(c.num_params(), a.seed);
  return parse_theta(read_file(a.theta), c.num_params());
}

void write_json(const std::string& path, const json& doc) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << doc.dump(1) << '\n';
}

json theta_json(const ParameterPoint& theta) {
  json a = json::array();
  for (Eigen::Index i = 0; i < theta.size(); ++i) a.push_back(theta(i));
  return a;
}

void print_steps(std::ostream& out, const AnalysisReport& r, bool measured) {
  out << "  param  min_eig        threshold      verdict\n";
  for (const auto& s : r.steps) {
    out << "  " << label(s.slot);
    for (std::size_t i = label(s.slot).size() - 1; i < 7; ++i) out << ' ';
    out << fmt("%-14.6e ", s.min_eigenvalue) << fmt("%-14.6e ", s.threshold)
        << s.reason;
    if (measured && !std::isnan(s.exact_min_eigenvalue))
      out << fmt("  (exact %.6e", s.exact_min_eigenvalue)
          << fmt(", eps %.3e)", s.epsilon);
    out << '\n';
  }
}

void print_summary(std::ostream& out, const AnalysisReport& r) {
  out << "independent " << labels(r.independent) << '\n'
      << "redundant   " << labels(r.redundant) << '\n'
      << "rank " << r.rank << " of ambient " << r.ambient_dim << " (codimension "
      << r.ambient_dim - r.rank << ")\n";
}

std::optional<SymmetryProbe> chosen_probe(const ParametricCircuit& c,
                                          std::optional<unsigned> phase_qubit,
                                          bool global, const std::string& word) {
  int n = (phase_qubit ? 1 : 0) + (global ? 1 : 0) + (word.empty() ? 0 : 1);
  if (n > 1) throw DimensionError("choose one of --probe-phase, --probe-global, --probe-word");
  if (phase_qubit) {
    if (*phase_qubit >= c.qubits())
      throw DimensionError("--probe-phase: qubit out of range");
    return phase_probe(c.qubits(), *phase_qubit);
  }
  if (global) return global_phase_probe(c.qubits());
  if (!word.empty()) {
    if (word.size() != c.qubits())
      throw DimensionError("--probe-word: word length must equal the qubit count");
    return word_probe(word);
  }
  return std::nullopt;
}

void print_finding(std::ostream& out, const SymmetryFinding& f) {
  out << "probe " << f.probe.description << ": ";
  if (f.probe_ineffective) {
    out << "probe is itself dependent; the symmetry is out of reach\n";
  } else if (!f.generated) {
    out << "probe independent; no slot reproduces it (probed rank "
        << f.probed.rank << ")\n";
  } else {
    out << "reproduced by " << labels(f.culprits) << '\n';
  }
}

RootOfUnity parse_omega(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw DimensionError("--omega expects d:n");
  try {
    int d = std::stoi(s.substr(0, colon));
    int n = std::stoi(s.substr(colon + 1));
    if (d < 1 || n < 0 || n >= d) throw DimensionError("--omega: need d >= 1, 0 <= n < d");
    if (std::gcd(d, n) != 1) throw DimensionError("--omega: n must be coprime to d");
    return {static_cast<unsigned>(d), static_cast<unsigned>(n)};
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const DimensionError*>(&e)) throw;
    throw DimensionError("--omega expects d:n");
  }
}

std::string omega_text(RootOfUnity w) {
  return std::to_string(w.index) + "/" + std::to_string(w.order);
}

TermRef parse_term(const std::string& s) {
  auto colon = s.find(':');
  try {
    if (colon == std::string::npos) return {static_cast<unsigned>(std::stoul(s)), 0};
    return {static_cast<unsigned>(std::stoul(s.substr(0, colon))),
            std::stoul(s.substr(colon + 1))};
  } catch (const std::logic_error&) {
    throw DimensionError("expected slot or slot:term, got '" + s + "'");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dimensional expressivity analysis of parametric circuits"};
  app.require_subcommand(1);

  // analyze
  CircuitArgs an;
  std::optional<unsigned> an_phase;
  bool an_global = false;
  std::string an_word;
  bool an_radius = false;
  ValidityOptions an_validity;
  auto* analyze = app.add_subcommand("analyze", "exact analysis of the slots");
  add_circuit_args(analyze, an);
  analyze->add_option("--probe-phase", an_phase, "R_Z phase probe on a qubit")
      ->expected(0, 1)
      ->default_str("0");
  analyze->add_flag("--probe-global", an_global, "identity-string phase probe");
  analyze->add_option("--probe-word", an_word, "probe about a Pauli word");
  analyze->add_flag("--radius", an_radius, "estimate the radius of validity");
  analyze->add_option("--R0", an_validity.R0, "sampling radius");

  // hybrid
  CircuitArgs hy;
  HybridOptions hy_opts;
  std::optional<double> hy_threshold;
  auto* hybrid = app.add_subcommand("hybrid", "analysis from simulated measurements");
  add_circuit_args(hybrid, hy);
  hybrid->add_option("--shots", hy_opts.shots.shots, "shots per overlap");
  hybrid->add_option("--z", hy_opts.shots.z, "confidence multiplier");
  hybrid->add_option("--fixed-threshold", hy_threshold,
                     "fixed threshold instead of k*epsilon");

  // rref
  CircuitArgs rr;
  std::optional<unsigned> rr_phase;
  bool rr_global = false;
  auto* rrefc = app.add_subcommand("rref", "reduced row echelon form of the Jacobian");
  add_circuit_args(rrefc, rr);
  rrefc->add_option("--probe-phase", rr_phase, "prepend an R_Z probe")
      ->expected(0, 1)
      ->default_str("0");
  rrefc->add_flag("--probe-global", rr_global, "prepend an identity-string probe");

  // symmetry
  CircuitArgs sy;
  std::optional<unsigned> sy_phase;
  bool sy_global = false;
  std::string sy_word;
  auto* symm = app.add_subcommand("symmetry", "detect and remove a probed symmetry");
  add_circuit_args(symm, sy);
  symm->add_option("--probe-phase", sy_phase, "R_Z phase probe on a qubit")
      ->expected(0, 1)
      ->default_str("0");
  symm->add_flag("--probe-global", sy_global, "identity-string phase probe");
  symm->add_option("--probe-word", sy_word, "probe about a Pauli word");

  // radius
  CircuitArgs ra;
  ValidityOptions ra_opts;
  auto* radius = app.add_subcommand("radius", "radius of validity of the independent set");
  add_circuit_args(radius, ra);
  radius->add_option("--R0", ra_opts.R0, "sampling radius");
  radius->add_option("--samples", ra_opts.samples, "gradient samples in the ball");

  // sectors
  unsigned se_qubits = 0;
  std::string se_omega;
  bool se_basis = false;
  std::string se_json;
  auto* sectors = app.add_subcommand("sectors", "momentum sector dimensions");
  sectors->add_option("--qubits", se_qubits)->required()->check(CLI::Range(1u, 20u));
  sectors->add_option("--omega", se_omega, "eigenvalue exp(2 pi i n/d) as d:n");
  sectors->add_flag("--basis", se_basis, "print the basis vectors");
  sectors->add_option("--json", se_json);

  // vqs
  std::string vq_kind = "original";
  unsigned vq_layers = 1;
  unsigned vq_steps = 100;
  OptimizerOptions vq_opt;
  std::uint64_t vq_seed = 0;
  double vq_spread = 0;
  std::string vq_out, vq_json;
  auto* vqs = app.add_subcommand("vqs", "continuation VQS on the Ising family");
  vqs->add_option("--ansatz", vq_kind, "original, custom11 or custom10");
  auto* vq_layers_opt = vqs->add_option("--layers", vq_layers, "layers of the original ansatz");
  vqs->add_option("--steps", vq_steps, "points M along x in [0, 1]")
      ->check(CLI::Range(2u, 100000u));
  vqs->add_option("--eta", vq_opt.eta, "learning rate");
  vqs->add_option("--max-iters", vq_opt.max_iters, "iterations per point");
  vqs->add_option("--grad-tol", vq_opt.grad_tol, "gradient-norm stopping tolerance");
  vqs->add_option("--seed", vq_seed);
  vqs->add_option("--spread", vq_spread, "initial random perturbation");
  vqs->add_option("--out", vq_out, "trace CSV");
  vqs->add_option("--json", vq_json);

  // path
  unsigned pa_qubits = 4;
  std::string pa_omega = "1:0";
  unsigned pa_samples = 11;
  std::uint64_t pa_seed = 0;
  std::string pa_out, pa_json;
  auto* path = app.add_subcommand("path", "path between two random states of one sector");
  path->add_option("--qubits", pa_qubits)->check(CLI::Range(1u, 12u));
  path->add_option("--omega", pa_omega, "sector as d:n");
  path->add_option("--samples", pa_samples)->check(CLI::Range(2u, 100000u));
  path->add_option("--seed", pa_seed);
  path->add_option("--out", pa_out, "CSV of t, norm and residuals");
  path->add_option("--json", pa_json);

  // export-ancilla
  std::string ex_path, ex_m, ex_n, ex_out;
  auto* exanc = app.add_subcommand("export-ancilla", "Hadamard-test circuit for one overlap");
  exanc->add_option("circuit", ex_path)->required();
  exanc->add_option("--m", ex_m, "slot or slot:term on the ancilla-0 branch")->required();
  exanc->add_option("--n", ex_n, "slot or slot:term on the ancilla-1 branch")->required();
  exanc->add_option("--out", ex_out, "output circuit file; stdout if empty");

  // build
  std::string bu_kind;
  unsigned bu_qubits = 3, bu_reps = 2, bu_layers = 1;
  std::string bu_out;
  auto* build = app.add_subcommand("build", "write a standard circuit");
  build->add_option("kind", bu_kind, "effsu2, original, custom11 or custom10")->required();
  build->add_option("--qubits", bu_qubits);
  build->add_option("--reps", bu_reps);
  build->add_option("--layers", bu_layers);
  build->add_option("--out", bu_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (analyze->parsed()) {
      auto c = load_circuit(an.path);
      auto theta = load_theta(an, c);
      AnalysisOptions opts;
      opts.tol.threshold = an.threshold;
      opts.jobs = an.jobs;
      auto probe = chosen_probe(c, an_phase, an_global, an_word);
      auto report = analyze_exact(c, theta, opts);
      json doc = {{"command", "analyze"}, {"theta", theta_json(theta)},
                  {"report", to_json(report)}};
      out << "qubits " << c.qubits() << ", parameters " << c.num_params() << '\n';
      print_steps(out, report, false);
      print_summary(out, report);
      if (probe) {
        auto f = detect_symmetry(c, theta, *probe, opts);
        print_finding(out, f);
        doc["symmetry"] = to_json(f);
        if (f.generated) {
          auto removal = remove_symmetry(c, theta, *probe, opts);
          out << "after removal: independent " << labels(removal.reduced.independent)
              << " (" << removal.reduced.independent.size() << ")\n";
          doc["reduced"] = to_json(removal.reduced);
        }
      }
      if (an_radius) {
        auto v = radius_of_validity(c, theta, report.independent, an_validity);
        out << "gram determinant " << fmt("%.6e", v.D) << ", |grad| "
            << fmt("%.3e", v.grad_norm) << ", R >= " << fmt("%.6g", v.R_first_order)
            << " (first order), " << fmt("%.6g", v.R_sampled) << " (sampled)\n";
        doc["validity"] = to_json(v);
      }
      write_json(an.json_path, doc);
    } else if (hybrid->parsed()) {
      auto c = load_circuit(hy.path);
      auto theta = load_theta(hy, c);
      hy_opts.shots.seed = hy.seed;
      hy_opts.jobs = hy.jobs;
      hy_opts.threshold = hy_threshold;
      validate(hy_opts.shots);
      auto h = hybrid_analyze(c, theta, hy_opts);
      out << "shots " << hy_opts.shots.shots << ", z " << hy_opts.shots.z
          << ", seed " << hy_opts.shots.seed << '\n';
      print_steps(out, h.report, true);
      print_summary(out, h.report);
      out << "circuit runs " << h.circuit_runs << ", total shots " << h.total_shots;
      std::uint64_t expanded = 0;
      for (Eigen::Index i = 0; i < h.gram.pairs.rows(); ++i)
        for (Eigen::Index j = i; j < h.gram.pairs.cols(); ++j)
          if (h.gram.pairs(i, j) > 1) ++expanded;
      if (expanded)
        out << " (" << expanded << " entries expanded over shared-slot term pairs)";
      out << '\n';
      json doc = {{"command", "hybrid"}, {"theta", theta_json(theta)},
                  {"report", to_json(h)}};
      write_json(hy.json_path, doc);
    } else if (rrefc->parsed()) {
      auto c = load_circuit(rr.path);
      auto theta = load_theta(rr, c);
      auto probe = chosen_probe(c, rr_phase, rr_global, "");
      std::size_t p = probe ? probe->generators.size() : 0;
      auto cc = probe ? prepend_probe(c, probe->generators) : c;
      auto tt = probe ? probed_point(theta, p) : theta;
      auto j = real_jacobian(cc, tt);
      auto r = rref(j);
      auto shown = snap_integers(r.matrix);
      auto name = [&](unsigned s) {
        return s < p ? "φ" + std::to_string(s + 1) : label(s - static_cast<unsigned>(p));
      };
      out << "pivot columns:";
      for (auto col : r.pivot_columns) out << ' ' << name(j.column_slots[col]);
      out << '\n';
      for (std::size_t row = 0; row < r.pivot_columns.size(); ++row) {
        unsigned ps = j.column_slots[r.pivot_columns[row]];
        out << "  " << name(ps) << ':';
        for (Eigen::Index col = 0; col < shown.cols(); ++col) {
          if (std::find(r.pivot_columns.begin(), r.pivot_columns.end(), col) !=
              r.pivot_columns.end())
            continue;
          double v = shown(static_cast<Eigen::Index>(row), col);
          if (v != 0) out << ' ' << name(j.column_slots[col]) << '=' << fmt("%.6g", v);
        }
        out << '\n';
      }
      std::vector<unsigned> slots;
      for (unsigned s : j.column_slots) slots.push_back(s);
      json doc = {{"command", "rref"}, {"probe_slots", p}, {"rref", to_json(r, slots)}};
      write_json(rr.json_path, doc);
    } else if (symm->parsed()) {
      auto c = load_circuit(sy.path);
      auto theta = load_theta(sy, c);
      auto probe = chosen_probe(c, sy_phase, sy_global, sy_word);
      if (!probe) probe = phase_probe(c.qubits());
      AnalysisOptions opts;
      opts.tol.threshold = sy.threshold;
      opts.jobs = sy.jobs;
      auto f = detect_symmetry(c, theta, *probe, opts);
      print_finding(out, f);
      json doc = {{"command", "symmetry"}, {"finding", to_json(f)}};
      if (f.generated) {
        out << "a =";
        for (Eigen::Index i = 0; i < f.a_entries.size(); ++i)
          out << ' ' << fmt("%.6g", f.a_entries(i));
        out << (f.b_is_zero ? ", b = 0\n" : ", b nonzero\n");
        auto removal = remove_symmetry(c, theta, *probe, opts);
        print_summary(out, removal.reduced);
        doc["reduced"] = to_json(removal.reduced);
      }
      write_json(sy.json_path, doc);
    } else if (radius->parsed()) {
      auto c = load_circuit(ra.path);
      auto theta = load_theta(ra, c);
      AnalysisOptions opts;
      opts.tol.threshold = ra.threshold;
      opts.jobs = ra.jobs;
      auto report = analyze_exact(c, theta, opts);
      ra_opts.seed = ra.seed;
      auto v = radius_of_validity(c, theta, report.independent, ra_opts);
      out << "independent " << labels(report.independent) << '\n'
          << "D " << fmt("%.10e", v.D) << ", |grad D| " << fmt("%.3e", v.grad_norm)
          << '\n'
          << "R >= " << fmt("%.6g", v.R_first_order) << " (first order), "
          << fmt("%.6g", v.R_sampled) << " (sampled over " << v.sample_count
          << " points, R0 " << v.R0 << ")\n";
      json doc = {{"command", "radius"}, {"report", to_json(report)},
                  {"validity", to_json(v)}};
      write_json(ra.json_path, doc);
    } else if (sectors->parsed()) {
      json doc = {{"command", "sectors"}, {"qubits", se_qubits}};
      if (!se_omega.empty()) {
        auto w = parse_omega(se_omega);
        if (se_basis && se_qubits > 12)
          throw DimensionError("--basis needs --qubits <= 12");
        auto s = sector(se_qubits, w, se_basis);
        out << "omega = exp(2 pi i " << omega_text(w) << "): dim " << s.dim
            << ", real sphere dim " << s.real_sphere_dim << '\n';
        for (std::size_t b = 0; b < s.basis.size(); ++b) {
          out << "  e" << b + 1 << " =";
          const auto& e = s.basis[b];
          for (Eigen::Index j = 0; j < e.size(); ++j) {
            if (std::abs(e(j)) < 1e-14) continue;
            std::string bits;
            for (unsigned q = se_qubits; q-- > 0;) bits += ((j >> q) & 1) ? '1' : '0';
            double re = std::abs(e(j).real()) < 1e-14 ? 0 : e(j).real();
            double im = std::abs(e(j).imag()) < 1e-14 ? 0 : e(j).imag();
            out << " (" << fmt("%.4g", re) << (im < 0 ? "" : "+") << fmt("%.4g", im)
                << "i)|" << bits << ">";
          }
          out << '\n';
        }
        doc["sectors"] = json::array({to_json(s)});
      } else {
        out << "  d   n   dim        2dim-1\n";
        doc["sectors"] = json::array();
        std::uint64_t total = 0;
        for (auto w : translation_eigenvalues(se_qubits)) {
          auto s = sector(se_qubits, w, false);
          total += s.dim;
          char line[96];
          std::snprintf(line, sizeof line, "  %-3u %-3u %-10llu %llu\n", w.order,
                        w.index, static_cast<unsigned long long>(s.dim),
                        static_cast<unsigned long long>(s.real_sphere_dim));
          out << line;
          doc["sectors"].push_back(to_json(s));
        }
        out << "total " << total << '\n';
      }
      write_json(se_json, doc);
    } else if (vqs->parsed()) {
      auto kind = parse_ansatz_kind(vq_kind);
      if (kind != AnsatzKind::Original && vq_layers_opt->count() > 0) {
        err << "warning: --layers applies to the original ansatz only; ignored for "
            << ansatz_name(kind) << '\n';
        vq_layers = 1;
      }
      if (vq_opt.eta <= 0) throw DimensionError("--eta must be positive");
      auto c = build_ti_ansatz(kind, vq_layers);
      auto trace = continuation_vqs(c, vq_steps, vq_opt, vq_seed, vq_spread);
      const auto& last = trace.records.back();
      if (!vq_out.empty()) {
        std::ofstream f(vq_out);
        if (!f) throw ParseError("cannot write '" + vq_out + "'");
        f << trace_csv(trace);
      }
      out << "ansatz " << ansatz_name(kind) << ", " << c.num_params()
          << " parameters, M " << vq_steps << ", eta " << vq_opt.eta << '\n'
          << "final x " << last.x << ": E " << fmt("%.10f", last.energy) << ", E0 "
          << fmt("%.10f", last.ground) << ", relative error "
          << fmt("%.3e", last.relative_error()) << '\n';
      json doc = {{"command", "vqs"}, {"ansatz", ansatz_name(kind)},
                  {"trace", to_json(trace)}};
      write_json(vq_json, doc);
    } else if (path->parsed()) {
      auto w = parse_omega(pa_omega);
      auto basis = sector_basis(pa_qubits, w);
      std::mt19937_64 rng(pa_seed);
      std::normal_distribution<double> g;
      auto draw = [&] {
        StateVector v = StateVector::Zero(std::int64_t{1} << pa_qubits);
        for (const auto& e : basis) v += Complex(g(rng), g(rng)) * e;
        return StateVector(v.normalized());
      };
      StateVector phi = draw(), psi = draw();
      auto p = eigen_path(phi, psi, pa_samples);
      Complex om = w.value();
      std::ostringstream csv;
      csv << "# dexpr path v1\nt,norm,eigen_residual\n";
      double worst = 0;
      for (std::size_t i = 0; i < p.samples.size(); ++i) {
        const auto& s = p.samples[i];
        double res = (translate_state(s) - om * s).norm();
        worst = std::max(worst, res);
        double t = p.samples.size() > 1 ? double(i) / double(p.samples.size() - 1) : 0;
        csv << t << ',' << s.norm() << ',' << res << '\n';
      }
      if (!pa_out.empty()) {
        std::ofstream f(pa_out);
        if (!f) throw ParseError("cannot write '" + pa_out + "'");
        f << csv.str();
      }
      out << "sector omega = exp(2 pi i " << omega_text(w) << ") on " << pa_qubits
          << " qubits, t_psi " << fmt("%.6f", p.t_psi) << ", "
          << p.samples.size() << " samples, max eigen residual "
          << fmt("%.3e", worst) << (p.phase_only ? " (phase-only difference)" : "")
          << '\n';
      json samples = json::array();
      for (const auto& s : p.samples) samples.push_back(state_json(s));
      json doc = {{"command", "path"}, {"t_psi", p.t_psi},
                  {"phase_only", p.phase_only},
                  {"applied_phase", {p.applied_phase.real(), p.applied_phase.imag()}},
                  {"max_eigen_residual", worst}, {"samples", samples}};
      write_json(pa_json, doc);
    } else if (exanc->parsed()) {
      auto c = load_circuit(ex_path);
      auto prog = ancilla_program(c, parse_term(ex_m), parse_term(ex_n));
      auto text = serialize_circuit(prog.circuit, prog.measured);
      if (ex_out.empty()) {
        out << text << '\n';
      } else {
        std::ofstream f(ex_out);
        if (!f) throw ParseError("cannot write '" + ex_out + "'");
        f << text << '\n';
        out << "ancilla qubit " << prog.ancilla << ", "
            << prog.circuit.gates().size() << " gates written to " << ex_out << '\n';
      }
    } else if (build->parsed()) {
      ParametricCircuit c;
      if (bu_kind == "effsu2") {
        if (bu_qubits < 1 || bu_qubits > 30) throw DimensionError("--qubits out of range");
        c = efficient_su2(bu_qubits, bu_reps);
      } else {
        c = build_ti_ansatz(parse_ansatz_kind(bu_kind), bu_layers);
      }
      auto text = serialize_circuit(c);
      if (bu_out.empty()) {
        out << text << '\n';
      } else {
        std::ofstream f(bu_out);
        if (!f) throw ParseError("cannot write '" + bu_out + "'");
        f << text << '\n';
      }
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kPreconditionError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kOk;
}

}  // namespace dexpr::cli
