// Acceptance gate: one pass/fail line per advertised criterion, with wall
// times and runtime caps. Exits with the number of failed criteria.
//
// One criterion (the central-term normalization) encodes an external
// expectation that the engine provably refutes; it is reported as an honest
// FAIL together with the measured certificate, not patched over.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "imwak/phi.hpp"
#include "imwak/samples.hpp"
#include "imwak/suites.hpp"

using namespace imwak;

namespace {

struct Gate {
  int failed = 0;
  int total = 0;

  template <typename Body>
  void criterion(int num, const std::string& title, double cap_seconds, Body&& body) {
    ++total;
    std::ostringstream detail;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail << "    exception: " << e.what() << "\n";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cap_seconds > 0 && secs > cap_seconds) {
      ok = false;
      detail << "    exceeded the " << cap_seconds << " s budget\n";
    }
    if (!ok) ++failed;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << num << ": " << title << "  ("
              << std::fixed << std::setprecision(2) << secs << "s)\n";
    std::cout << detail.str();
  }
};

bool suite_green(const std::string& name, std::ostringstream& detail,
                 VerificationReport* out = nullptr) {
  VerificationReport rep = run_suite(name, SuiteOptions{});
  if (out) *out = rep;
  if (rep.tier1_ok()) return true;
  for (const auto& f : rep.tier1_failures) {
    detail << "    " << name << " FAIL: " << f["check"].get<std::string>() << "\n";
  }
  return false;
}

FockVector central_witness(const Scalar& mu) {
  Params p;
  p.mu = mu;
  p.b_level = 1;
  FockVector w = vacuum();
  FockVector x = apply_L(2, apply_L(-2, w, p), p);
  x -= apply_L(-2, apply_L(2, w, p), p);
  x -= apply_L(0, w, p) * Scalar(4);
  return x;
}

}  // namespace

int main() {
  Gate gate;

  gate.criterion(1, "oscillator commutation relations: mode bound 4, 20 random samples, "
                    "100 cross-checked operator pairs, under 10 s",
                 10.0, [](std::ostringstream& d) { return suite_green("heisenberg", d); });

  gate.criterion(2, "loop-algebra brackets at matched b-level: six families, mode bound 3, "
                    "six parameter tuples including level 0, detuned control, under 30 s",
                 30.0, [](std::ostringstream& d) { return suite_green("affine", d); });

  gate.criterion(3, "centreless Witt action of the quadratic operators, mode bound 4", 0,
                 [](std::ostringstream& d) { return suite_green("lbar", d); });

  gate.criterion(4, "central term: charge 6 - 6 mu^2 with vacuum witness 3 (1 - mu^2) w, "
                    "vanishing at mu = 1, under 60 s",
                 60.0, [](std::ostringstream& d) {
    bool ok = true;
    for (Scalar mu : {Scalar(0), rat(1, 2), Scalar(1), rat(-3, 5)}) {
      FockVector defect = central_witness(mu);
      Scalar measured_half_c = defect.is_zero() ? Scalar(0) : defect.terms.begin()->second;
      Scalar required = Scalar(3) * (Scalar(1) - mu * mu);
      bool match = defect == vacuum() * required;
      if (!match) ok = false;
      d << "    mu = " << to_string(mu) << ": measured ([L_2,L_{-2}] - 4 L_0) w = "
        << to_string(measured_half_c) << " w, required " << to_string(required)
        << " w; measured c = " << to_string(Scalar(2) * measured_half_c) << ", required "
        << to_string(Scalar(6) - Scalar(6) * mu * mu) << "\n";
    }
    {
      FockVector defect = central_witness(1);
      Scalar c = defect.is_zero() ? Scalar(0) : Scalar(2) * defect.terms.begin()->second;
      if (c != 0) {
        ok = false;
        d << "    mu = 1: measured c = " << to_string(c) << ", required 0\n";
      }
    }
    if (!ok) {
      d << "    certificate: the measured charge is 1 - 6 mu^2 at every sampled mu\n"
        << "    (closure with that charge is proved exactly by the virasoro suite)\n";
    }
    return ok;
  });

  gate.criterion(5, "mixed brackets of loop/oscillator modes against the conformal family, "
                    "mode bound 3, plus degree-operator comparison in both conventions",
                 0, [](std::ostringstream& d) {
    bool mixed_ok = suite_green("mixed", d);
    bool degree_ok = suite_green("d-vs-l0", d);
    return mixed_ok && degree_ok;
  });

  gate.criterion(6, "coefficient recurrence through weight 8; kernel solve battery at degree 5 "
                    "with the closed-form comparison recorded",
                 0, [](std::ostringstream& d) {
    VerificationReport sing;
    bool beta_ok = suite_green("beta", d);
    bool singular_ok = suite_green("singular", d, &sing);
    bool ok = beta_ok && singular_ok;
    if (sing.tier2.empty()) {
      ok = false;
      d << "    singular suite recorded no comparison tables\n";
    }
    return ok;
  });

  VerificationReport phi_rep;
  bool phi_ok = false;
  {
    std::ostringstream scratch;
    phi_ok = suite_green("phi", scratch, &phi_rep);
  }

  gate.criterion(7, "degree compatibility of the series at the exact weight gap, with a "
                    "provably nonzero defect one unit off, in both shift conventions",
                 0, [&](std::ostringstream& d) {
    if (!phi_ok) {
      suite_green("phi", d);
      return false;
    }
    Params p;
    p.lambda = rat(1, 2);
    p.kappa = 3;
    p.mu = rat(1, 3);
    p.m_weight = 2;
    SingularResult sing = singular_solve(4, p);
    if (sing.dimension != 1) {
      d << "    singular solve not one-dimensional\n";
      return false;
    }
    bool ok = true;
    for (auto conv : {DeltaConvention::affine, DeltaConvention::virasoro}) {
      Params pc = p;
      pc.delta_convention = conv;
      Scalar gap = delta_gap(pc);
      FockMonomial word;  // highest weight vector
      TensorVector at_gap = d_intertwining_residual(word, gap, sing.vsharp, pc);
      TensorVector above = d_intertwining_residual(word, gap + 1, sing.vsharp, pc);
      TensorVector below = d_intertwining_residual(word, gap - 1, sing.vsharp, pc);
      if (!at_gap.is_zero_through(at_gap.complete_through)) {
        ok = false;
        d << "    residual nonzero at the gap (" << convention_name(conv) << ")\n";
      }
      if (above.is_zero_through(above.complete_through) ||
          below.is_zero_through(below.complete_through)) {
        ok = false;
        d << "    defect vanished one unit off the gap (" << convention_name(conv) << ")\n";
      }
    }
    return ok;
  });

  gate.criterion(8, "mode-commutator families for every series component: window 4, mode "
                    "bound 3, with the raw b-mode defect recorded",
                 0, [&](std::ostringstream& d) {
    if (!phi_ok) {
      suite_green("phi", d);
      return false;
    }
    bool recorded = false;
    for (const auto& entry : phi_rep.tier2) {
      if (entry["name"] == "raw_b_bracket_defects" && !entry["data"].empty()) recorded = true;
    }
    if (!recorded) {
      d << "    raw b-mode defect table missing or empty\n";
      return false;
    }
    return true;
  });

  gate.criterion(9, "operator-form differential identity: bracket modes -1..2, window 4, "
                    "derivative cross-consistency exact; full battery under 300 s",
                 300.0, [](std::ostringstream& d) {
    bool ok = suite_green("kz", d);
    for (const auto& name : suite_names()) {
      VerificationReport rep = run_suite(name, SuiteOptions{});
      if (!rep.tier1_ok()) {
        ok = false;
        d << "    battery suite " << name << " failed\n";
      }
    }
    return ok;
  });

  gate.criterion(10, "determinism: a fixed seed reproduces byte-identical reports", 0,
                 [](std::ostringstream& d) {
    bool ok = true;
    for (const auto& name : suite_names()) {
      SuiteOptions o;
      o.seed = 7;
      std::string first = run_suite(name, o).dump();
      std::string second = run_suite(name, o).dump();
      if (first != second) {
        ok = false;
        d << "    suite " << name << " is not byte-stable\n";
      }
    }
    return ok;
  });

  std::cout << (gate.total - gate.failed) << "/" << gate.total << " criteria passed";
  if (gate.failed > 0) {
    std::cout << ", " << gate.failed
              << " failed (see the certificate lines above; the repository documents the "
                 "measured normalization)";
  }
  std::cout << "\n";
  return gate.failed;
}
