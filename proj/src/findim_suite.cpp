// The per-algebra check list used by the CLI and the acceptance runner.
#include "hopftwist/errors.hpp"
#include "hopftwist/findim.hpp"

namespace hopftwist {

namespace {

bool same_module(const CrossedModule& a, const CrossedModule& b) {
  return a.hopf == b.hopf && a.vdim == b.vdim && a.action == b.action && a.coaction == b.coaction;
}

// Runs fn, turning a library Error into a failed check with its message.
template <class Fn>
AxiomResult run_check(const std::string& name, Fn&& fn) {
  AxiomResult r{name, false, {}};
  try {
    r.ok = fn(r.first_failure);
  } catch (const Error& e) {
    r.first_failure = e.what();
  }
  return r;
}

AxiomResult leibniz_check(const FinHopf& H, const std::string& name) {
  return run_check(name, [&](std::string&) {
    CalculusData c = calculus_from_ideal(H, {});
    return leibniz_holds(c) && surjective(c);
  });
}

}  // namespace

std::vector<AxiomResult> twist_suite(const FinHopf& H, const Cocycle& chi) {
  std::vector<AxiomResult> out;
  out.push_back(run_check("check_hopf", [&](std::string& why) {
    AxiomReport r = check_hopf(H);
    if (!r.ok()) why = r.str();
    return r.ok();
  }));
  out.push_back(run_check("cocycle", [&](std::string&) { return check_cocycle(H, chi); }));
  if (!out.back().ok) return out;

  FinHopf T;
  out.push_back(run_check("twisted_check_hopf", [&](std::string& why) {
    T = twist(H, chi);
    AxiomReport r = check_hopf(T);
    if (!r.ok()) why = r.str();
    return r.ok();
  }));
  out.push_back(run_check("twist_involutive", [&](std::string&) { return twist(T, inverse_of(chi)) == H; }));
  out.push_back(run_check("functor_braiding", [&](std::string& why) {
    CrossedModule V = self_crossed_module(H);
    FunctorResult F = functor_F(V, chi);
    Mat psi_t = crossed_check(F.module, F.module).braiding;
    if (!(F.c * psi_t == braiding(V, V) * F.c)) why = "c does not intertwine the braidings";
    else if (!same_module(functor_F(F.module, inverse_of(chi)).module, V)) why = "F^-1 F V != V";
    return why.empty();
  }));
  if (chi.side == CocycleSide::dual)
    out.push_back(run_check("theta_iso", [&](std::string&) {
      return theta_report(H, chi, theta_iso(H, chi)).ok();
    }));
  out.push_back(run_check("alpha_map", [&](std::string& why) {
    AlphaReport r = alpha_report(H, chi, alpha_map(H, chi));
    if (!r.inverse) why = "inverse";
    else if (!r.action) why = "action";
    else if (!r.coaction) why = "coaction";
    else if (!r.unit) why = "unit";
    else if (!r.kernel) why = "kernel";
    return r.ok();
  }));
  out.push_back(leibniz_check(H, "calculus_leibniz"));
  if (out[2].ok) out.push_back(leibniz_check(T, "calculus_leibniz_twisted"));
  // on H only: the twisted k(S3) relations take minutes
  out.push_back(run_check("prolong_deg2", [&](std::string& why) {
    CalculusData c = calculus_from_ideal(H, {});
    Subspace I = prolong_deg2(c, ProlongKind::maximal);
    Subspace W = prolong_deg2(c, ProlongKind::woronowicz);
    if (!is_sub_bicovariant(c, I)) why = "maximal prolongation relations not bicovariant";
    else if (!is_sub_bicovariant(c, W)) why = "Woronowicz relations not bicovariant";
    else if (!W.contains(I)) why = "Woronowicz relations miss a maximal one";
    return why.empty();
  }));
  out.push_back(run_check("findim_fourier", [&](std::string& why) {
    Vec r = right_integral(H), l = left_integral_dual(H);
    if (r.empty() || l.empty()) {
      why = "no integral";
      return false;
    }
    FourierData F = findim_fourier(H, r, l);
    why = "scale " + F.scale.str();
    return fourier_composition_holds(H, F) && fourier_intertwiners_hold(H, F);
  }));
  return out;
}

}  // namespace hopftwist
