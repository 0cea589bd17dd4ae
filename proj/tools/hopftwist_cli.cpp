// hopftwist: verification suites and numeric experiments with JSON reports.
// Exit status: 0 all checks passed, 1 a check failed, 2 bad input.
#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "hopftwist/calculus.hpp"
#include "hopftwist/dynamics.hpp"
#include "hopftwist/errors.hpp"
#include "hopftwist/findim.hpp"
#include "hopftwist/findim_json.hpp"
#include "hopftwist/fourier.hpp"
#include "hopftwist/planck.hpp"
#include "report.hpp"

using namespace hopftwist;
using hopftwist::cli::Report;
using nlohmann::json;
using cplx = std::complex<double>;

namespace {

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw BadInput(path + ": " + e.what());
  }
}

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (tok.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw BadInput("not a number list: " + s);
    }
  }
  return out;
}

// "1.5" or "1.5,-0.2" (real, imaginary)
cplx parse_complex(const std::string& s) {
  auto v = split_doubles(s);
  if (v.empty() || v.size() > 2) throw BadInput("expected re or re,im: " + s);
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

void add_axioms(Report& rep, const AxiomReport& r, const std::string& prefix = {}) {
  for (const auto& a : r.axioms) rep.check(prefix + a.name, a.ok, a.first_failure);
}

CalcSpec parse_spec(const std::string& s) {
  auto v = split_doubles(s);
  if (v.empty() || v.size() > 2 || v[0] < 2 || v[0] != std::floor(v[0]) || (v.size() == 2 && v[1] != 1))
    throw BadInput("--spec takes n,1 or n with n >= 2");
  return {static_cast<int>(v[0]), v.size() == 2};
}

Partial parse_partial(const std::string& s) {
  static const std::map<std::string, Partial> names{
      {"xi", Partial::xi},
      {"xi_leibniz", Partial::xi_leibniz},
      {"eta", Partial::eta},
      {"x_right", Partial::x_right},
      {"x_bar_left", Partial::x_bar_left},
      {"eta_bar_left", Partial::eta_bar_left},
      {"eta_bar_left_i", Partial::eta_bar_left_i},
      {"kappa_right_x", Partial::kappa_right_x},
      {"kappa_right_eta", Partial::kappa_right_eta},
      {"kappa_left_x", Partial::kappa_left_x},
      {"kappa_left_eta", Partial::kappa_left_eta},
  };
  auto it = names.find(s);
  if (it == names.end()) throw BadInput("unknown derivative " + s);
  return it->second;
}

// 4th order Runge-Kutta for x' = xbar hbar (e^{-x/G} - 1) on [0, 1]
double flow_rk4(double x, double xbar, double hbar, double G, int steps) {
  auto f = [&](double y) { return xbar * hbar * std::expm1(-y / G); };
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    const double k1 = f(x), k2 = f(x + h * k1 / 2), k3 = f(x + h * k2 / 2), k4 = f(x + h * k3);
    x += h * (k1 + 2 * k2 + 2 * k3 + k4) / 6;
  }
  return x;
}

struct FourierFlags {
  double hbar = 1, G = 1;
  int nodes = 200;
  std::string range = "-2,2";
  int grid = 5;
  std::string center = "0,0", width = "1,1";
  std::string csv;

  void add(CLI::App* c) {
    c->add_option("--hbar", hbar, "hbar")->capture_default_str();
    c->add_option("--G", G, "G")->capture_default_str();
    c->add_option("--nodes", nodes, "quadrature nodes per axis")->capture_default_str();
    c->add_option("--range", range, "lo,hi of the (pbar, xbar) grid")->capture_default_str();
    c->add_option("--grid", grid, "grid points per axis")->capture_default_str();
    c->add_option("--center", center, "Gaussian center x0,p0")->capture_default_str();
    c->add_option("--width", width, "Gaussian widths sx,sp")->capture_default_str();
    c->add_option("--csv", csv, "write pbar,xbar,re_T,im_T,res_eta,res_x here");
  }
  fourier::Grid make_grid() const {
    auto r = split_doubles(range);
    if (r.size() != 2 || !(r[1] > r[0])) throw BadInput("--range takes lo,hi with lo < hi");
    if (grid < 1) throw BadInput("--grid must be positive");
    fourier::Grid g;
    for (int i = 0; i < grid; ++i) {
      const double v = grid == 1 ? r[0] : r[0] + (r[1] - r[0]) * i / (grid - 1);
      g.a.push_back(v);
      g.b.push_back(v);
    }
    return g;
  }
  fourier::TestFunction test_function() const {
    auto c = split_doubles(center), w = split_doubles(width);
    if (c.size() != 2 || w.size() != 2) throw BadInput("--center and --width take two numbers");
    return fourier::TestFunction({c[0], c[1], w[0], w[1]});
  }
  fourier::QuadratureSpec quad() const {
    fourier::QuadratureSpec q;
    q.nx = q.np = nodes;
    return q;
  }
  void params(Report& rep) const {
    rep.params() = {{"hbar", hbar}, {"G", G},           {"nodes", nodes}, {"range", range},
                    {"grid", grid}, {"center", center}, {"width", width}};
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cocycle twists, the Planck scale Hopf algebra and its Fourier theory"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed may follow the subcommand
  unsigned seed = 7;
  app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();

  // each subcommand fills `rep` from its own callback
  std::unique_ptr<Report> rep;

  // ---- findim ----
  std::string hopf_path, cocycle_path, out_path;
  auto* fa = app.add_subcommand("findim-axioms", "Hopf axioms of a finhopf.json");
  fa->add_option("finhopf", hopf_path)->required();
  fa->callback([&] {
    rep = std::make_unique<Report>("findim-axioms");
    rep->params() = {{"finhopf", hopf_path}};
    FinHopf H = finhopf_from_json(read_json(hopf_path));
    rep->value("dim", H.dim);
    add_axioms(*rep, check_hopf(H));
  });

  auto* ft = app.add_subcommand("findim-twist", "twist by a cocycle and run the twist suite");
  ft->add_option("finhopf", hopf_path)->required();
  ft->add_option("cocycle", cocycle_path)->required();
  ft->add_option("--out", out_path, "write the twisted algebra as finhopf.json");
  ft->callback([&] {
    rep = std::make_unique<Report>("findim-twist");
    rep->params() = {{"finhopf", hopf_path}, {"cocycle", cocycle_path}};
    FinHopf H = finhopf_from_json(read_json(hopf_path));
    Cocycle chi = cocycle_from_json(H, read_json(cocycle_path));
    rep->value("dim", H.dim);
    for (const auto& r : twist_suite(H, chi)) rep->check(r.name, r.ok, r.first_failure);
    if (!out_path.empty() && rep->ok()) {
      std::ofstream(out_path) << finhopf_to_json(twist(H, chi)).dump(1) << "\n";
      rep->value("twisted", out_path);
    }
  });

  auto* fd = app.add_subcommand("findim-double", "quantum double D(H) and its axioms");
  fd->add_option("finhopf", hopf_path)->required();
  fd->add_option("--out", out_path, "write D(H) as finhopf.json");
  fd->callback([&] {
    rep = std::make_unique<Report>("findim-double");
    rep->params() = {{"finhopf", hopf_path}};
    FinHopf H = finhopf_from_json(read_json(hopf_path));
    FinHopf D = quantum_double(H);
    rep->value("dim", D.dim);
    add_axioms(*rep, check_hopf(D));
    if (!out_path.empty()) {
      std::ofstream(out_path) << finhopf_to_json(D).dump(1) << "\n";
      rep->value("double", out_path);
    }
  });

  // ---- planck ----
  int maxdeg = 4, grange = 3;
  auto* pc = app.add_subcommand("planck-cocycle", "cocycle identity of chi on the Planck algebra");
  pc->add_option("--maxdeg", maxdeg)->capture_default_str()->check(CLI::Range(0, 12));
  pc->add_option("--grange", grange)->capture_default_str()->check(CLI::Range(0, 12));
  pc->callback([&] {
    rep = std::make_unique<Report>("planck-cocycle");
    rep->params() = {{"maxdeg", maxdeg}, {"grange", grange}};
    CocycleCheck c = check_planck_cocycle(maxdeg, grange);
    rep->check("cocycle-identity", c.identity, c.first_failure);
    rep->check("unital", c.unital);
    rep->check("invertible", c.invertible);
    rep->value("triples", c.triples);
    // bullet product against normal ordering on the same monomial box
    long pairs = 0;
    std::string bad;
    for (int n = 0; n <= std::min(maxdeg, 3); ++n)
      for (int m = 0; m <= std::min(maxdeg, 3); ++m)
        for (int r = -std::min(grange, 2); r <= std::min(grange, 2); ++r)
          for (int s = -std::min(grange, 2); s <= std::min(grange, 2); ++s) {
            const PlanckElem a = PlanckElem::monomial({0, r, n}), b = PlanckElem::monomial({0, s, m});
            ++pairs;
            if (bad.empty() && !(bullet_product(a, b) == normal_mul(a, b))) bad = a.str() + " . " + b.str();
          }
    rep->check("bullet-equals-normal", bad.empty(), bad.empty() ? std::to_string(pairs) + " pairs" : bad);
  });

  int samples = 20;
  auto* pv = app.add_subcommand("planck-verify", "Hopf structure of the Planck algebra on random symbols");
  pv->add_option("--samples", samples)->capture_default_str()->check(CLI::Range(1, 10000));
  pv->callback([&] {
    rep = std::make_unique<Report>("planck-verify");
    rep->params() = {{"seed", seed}, {"samples", samples}};
    const PlanckElem P = PlanckElem::p(), Gg = PlanckElem::g();
    const PlanckElem iA(ParamScalar::iA());
    rep->check("relation [p,g] = iA(1-g)g", P * Gg - Gg * P == iA * (Gg - Gg * Gg));
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> deg(0, 2), gp(-2, 2), c(-3, 3);
    auto random_elem = [&] {
      PlanckElem e;
      for (int t = 0; t < 3; ++t) e.add_term({0, gp(rng), deg(rng)}, ParamScalar(GaussQ(c(rng), c(rng))));
      return e;
    };
    auto mul = [](const PlanckElem& a, const PlanckElem& b) { return normal_mul(a, b); };
    int bullet = 0, delta = 0, anti = 0, counit_ok = 0;
    for (int k = 0; k < samples; ++k) {
      const PlanckElem a = random_elem(), b = random_elem();
      bullet += bullet_product(a, b) == normal_mul(a, b);
      delta += planck_coproduct(a * b) == tensor_mul(planck_coproduct(a), planck_coproduct(b), mul);
      // m (S (x) id) Delta = eps 1 and (eps (x) id) Delta = id
      PlanckElem lhs, id;
      const TensorElem da = planck_coproduct(a);
      for (const auto& [mm, coef] : da.terms()) {
        const PlanckElem l = PlanckElem::monomial(mm.first), r = PlanckElem::monomial(mm.second);
        lhs += coef * (planck_antipode(l) * r);
        id += (coef * planck_counit(l)) * r;
      }
      anti += lhs == PlanckElem(planck_counit(a));
      counit_ok += id == a;
    }
    auto frac = [&](int n) { return std::to_string(n) + "/" + std::to_string(samples); };
    rep->check("bullet-equals-normal", bullet == samples, frac(bullet));
    rep->check("coproduct-multiplicative", delta == samples, frac(delta));
    rep->check("antipode", anti == samples, frac(anti));
    rep->check("counit", counit_ok == samples, frac(counit_ok));
  });

  // ---- calculus ----
  std::string spec = "2,1", op = "d", expr, expr2, which = "eta";
  auto* ca = app.add_subcommand("calc", "differential calculus on a symbol");
  ca->add_option("--spec", spec, "n,1 or n")->capture_default_str();
  ca->add_option("--op", op)->check(CLI::IsMember({"d", "wedge", "partial"}))->capture_default_str();
  ca->add_option("--expr", expr, "symbol, e.g. \"g p^2 - iA x\"")->required();
  ca->add_option("--with", expr2, "second symbol b for wedge: da ^ db");
  ca->add_option("--which", which, "derivative for --op partial")->capture_default_str();
  ca->callback([&] {
    rep = std::make_unique<Report>("calc");
    const CalcSpec cs = parse_spec(spec);
    const PlanckElem a = PlanckElem::parse(expr);
    rep->params() = {{"spec", spec}, {"op", op}, {"expr", expr}};
    const bool two_d = cs.n == 2 && cs.include_eta0;
    if (op == "d") {
      if (two_d) {
        const Form da = d(a);
        rep->value("d", da.str());
        rep->check("d^2 = 0", d(da).is_zero());
      } else {
        rep->value("d", d_general(cs, a).str());
      }
    } else if (op == "wedge") {
      if (!two_d) throw BadInput("--op wedge needs --spec 2,1");
      if (expr2.empty()) throw BadInput("--op wedge needs --with");
      rep->params()["with"] = expr2;
      rep->value("da^db", wedge(d(a), d(PlanckElem::parse(expr2))).str());
    } else {
      if (!two_d) throw BadInput("--op partial needs --spec 2,1");
      rep->params()["which"] = which;
      rep->value("partial", partial(a, parse_partial(which)).pretty());
    }
  });

  // ---- dynamics ----
  std::string sa, sb, pi, xi_reading = "leibniz";
  auto xi_of = [&] { return xi_reading == "printed" ? XiReading::printed : XiReading::leibniz; };
  auto poisson_data = [&] {
    PoissonData P;
    if (!pi.empty()) P.pi_of_g = PlanckElem::parse(pi);
    P.validate();
    return P;
  };
  auto* br = app.add_subcommand("bracket", "quantum Poisson bracket {a, b}");
  br->add_option("--a", sa)->required();
  br->add_option("--b", sb)->required();
  br->add_option("--pi", pi, "pi(g), a Laurent polynomial in g");
  br->add_option("--xi", xi_reading)->check(CLI::IsMember({"leibniz", "printed"}))->capture_default_str();
  br->callback([&] {
    rep = std::make_unique<Report>("bracket");
    rep->params() = {{"a", sa}, {"b", sb}, {"pi", pi}, {"xi", xi_reading}};
    const PlanckElem a = PlanckElem::parse(sa), b = PlanckElem::parse(sb);
    const PoissonData P = poisson_data();
    const PlanckElem q = quantum_bracket(a, b, P, xi_of());
    rep->value("bracket", q.pretty());
    rep->value("A=0", q.at_A_zero().pretty());
    rep->check("pairing-oracle", q == pairing_bracket(a, b, P));
    if (pi.empty())
      rep->check("classical-limit", q.at_A_zero() == classical_bracket(a.at_A_zero(), b.at_A_zero()));
  });

  std::string h, mode = "poisson";
  auto* ha = app.add_subcommand("hamilton", "equations of motion xdot, pdot for h");
  ha->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  ha->add_option("--h", h)->required();
  ha->add_option("--mode", mode)->check(CLI::IsMember({"poisson", "commutator", "classical"}))->capture_default_str();
  ha->add_option("--pi", pi, "pi(g), a Laurent polynomial in g");
  ha->add_option("--xi", xi_reading)->check(CLI::IsMember({"leibniz", "printed"}))->capture_default_str();
  ha->callback([&] {
    rep = std::make_unique<Report>("hamilton");
    rep->params() = {{"h", h}, {"mode", mode}, {"pi", pi}, {"xi", xi_reading}};
    const HamiltonMode m = mode == "poisson"      ? HamiltonMode::poisson
                           : mode == "commutator" ? HamiltonMode::commutator
                                                  : HamiltonMode::classical;
    HamiltonEq eq = hamilton(PlanckElem::parse(h), m, poisson_data(), xi_of());
    rep->value("xdot", eq.xdot.pretty());
    rep->value("pdot", eq.pdot.pretty());
  });

  double mass = 1, dt = 0.01, Gval = 1;
  long steps = 100;
  std::string V, x0 = "1", p0 = "0", Aval = "0", csv;
  auto* in = app.add_subcommand("integrate", "RK4 trajectory for h = p^2/2m + sum V_k x^k");
  in->add_option("--m", mass)->capture_default_str();
  in->add_option("--V", V, "potential coefficients V0,V1,...");
  in->add_option("--mode", mode)->check(CLI::IsMember({"poisson", "commutator", "classical"}))->capture_default_str();
  in->add_option("--x0", x0, "re or re,im")->capture_default_str();
  in->add_option("--p0", p0, "re or re,im")->capture_default_str();
  in->add_option("--dt", dt)->capture_default_str();
  in->add_option("--steps", steps)->capture_default_str();
  in->add_option("--A", Aval, "value of hbar/G, re or re,im")->capture_default_str();
  in->add_option("--G", Gval)->capture_default_str();
  in->add_option("--xi", xi_reading)->check(CLI::IsMember({"leibniz", "printed"}))->capture_default_str();
  in->add_option("--csv", csv, "write step,t,re_x,im_x,re_p,im_p here");
  in->callback([&] {
    rep = std::make_unique<Report>("integrate");
    HamiltonSpec hs{mass, V.empty() ? std::vector<double>{} : split_doubles(V)};
    rep->params() = {{"m", mass},   {"V", hs.V},       {"mode", mode}, {"x0", x0}, {"p0", p0},
                     {"dt", dt},    {"steps", steps},  {"A", Aval},    {"G", Gval}, {"xi", xi_reading}};
    const HamiltonMode m = mode == "poisson"      ? HamiltonMode::poisson
                           : mode == "commutator" ? HamiltonMode::commutator
                                                  : HamiltonMode::classical;
    auto traj = integrate(hs, m, parse_complex(x0), parse_complex(p0), dt, steps, parse_complex(Aval), Gval,
                          xi_of());
    rep->value("hamiltonian", hamiltonian_symbol(hs).pretty());
    rep->value("final", {{"t", traj.back().t}, {"x", cplx_json(traj.back().x)}, {"p", cplx_json(traj.back().p)}});
    if (!csv.empty()) {
      std::ofstream os(csv);
      if (!os) throw BadInput("cannot write " + csv);
      write_csv(os, traj);
      rep->value("csv", csv);
    }
  });

  // ---- fourier ----
  FourierFlags ff;
  auto* fT = app.add_subcommand("fourier-T", "T of a Gaussian on a (pbar, xbar) grid");
  ff.add(fT);
  fT->callback([&] {
    rep = std::make_unique<Report>("fourier-T");
    ff.params(*rep);
    const auto g = ff.make_grid();
    const auto f = ff.test_function();
    const auto eta = fourier::intertwiner_samples(f, fourier::Intertwiner::eta_bar, ff.quad(), g, ff.hbar, ff.G);
    const auto xs = fourier::intertwiner_samples(f, fourier::Intertwiner::x_bar, ff.quad(), g, ff.hbar, ff.G);
    const auto re = eta.pointwise(), rx = xs.pointwise();
    double peak = 0;
    for (const auto& v : eta.F.values) peak = std::max(peak, std::abs(v));
    rep->value("points", eta.F.values.size());
    rep->value("max|T|", peak);
    rep->value("clipped", eta.F.clipped);
    rep->value("eta_bar residual", eta.residual());
    rep->value("x_bar residual", xs.residual());
    if (!ff.csv.empty()) {
      std::ofstream os(ff.csv);
      if (!os) throw BadInput("cannot write " + ff.csv);
      os << "pbar,xbar,re_T,im_T,res_eta,res_x\n";
      os.precision(17);
      for (size_t i = 0; i < g.a.size(); ++i)
        for (size_t j = 0; j < g.b.size(); ++j) {
          const size_t k = i * g.b.size() + j;
          os << g.a[i] << "," << g.b[j] << "," << eta.F.values[k].real() << "," << eta.F.values[k].imag() << ","
             << re[k] << "," << rx[k] << "\n";
        }
      rep->value("csv", ff.csv);
    }
  });

  double eta_tol = 1e-6, x_tol = 1e-5;
  bool roundtrip = false;
  auto* fc = app.add_subcommand("fourier-check", "flow oracle, intertwiners and the classical round trip");
  ff.add(fc);
  fc->add_option("--eta-tol", eta_tol)->capture_default_str();
  fc->add_option("--x-tol", x_tol)->capture_default_str();
  fc->add_flag("--roundtrip", roundtrip, "also run T T* = (2 pi)^2 S^-1 for a Gaussian, kappa = 1");
  fc->callback([&] {
    rep = std::make_unique<Report>("fourier-check");
    ff.params(*rep);
    rep->params()["eta_tol"] = eta_tol;
    rep->params()["x_tol"] = x_tol;
    const auto g = ff.make_grid();
    const auto f = ff.test_function();
    double worst = 0;
    for (double x : {-0.5, 0.3, 1.0, 2.0})
      for (double xb : {-0.4, 0.2, 0.7, 1.5})
        worst = std::max(worst, std::abs(fourier::flow(x, xb, ff.hbar, ff.G) - flow_rk4(x, xb, ff.hbar, ff.G, 4000)));
    rep->check("flow-vs-rk4", worst < 1e-10, sci(worst));
    const double e = fourier::intertwiner_residual(f, fourier::Intertwiner::eta_bar, ff.quad(), g, ff.hbar, ff.G);
    const double x = fourier::intertwiner_residual(f, fourier::Intertwiner::x_bar, ff.quad(), g, ff.hbar, ff.G);
    rep->check("eta_bar intertwiner", e < eta_tol, sci(e));
    rep->check("x_bar intertwiner", x < x_tol, sci(x));
    const double dropped = fourier::intertwiner_residual(f, fourier::Intertwiner::x_bar, ff.quad(), g, ff.hbar,
                                                         ff.G, {fourier::EtaReading::imaginary_shift, true});
    rep->check("reorder term matters", dropped > 100 * x, sci(dropped));
    rep->value("printed eta_bar residual",
               fourier::intertwiner_residual(f, fourier::Intertwiner::eta_bar, ff.quad(), g, ff.hbar, ff.G,
                                             {fourier::EtaReading::printed, false}),
               "real shift hbar/G");
    if (roundtrip) {
      const std::vector<std::pair<double, double>> pts{{-1, 0.5}, {0, 0}, {0.5, -0.7}, {1, 1}, {2, -0.2}};
      double rt = 0;
      for (const auto& p : fourier::roundtrip_classical({0, 0, 1}, pts, 1.0)) rt = std::max(rt, p.rel_error);
      rep->check("roundtrip", rt < 1e-3, sci(rt));
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (e.code() == Errc::Parse || e.code() == Errc::InvalidArgument || e.code() == Errc::DimensionMismatch) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    // a computation failed: still emit a report
    if (!rep) rep = std::make_unique<Report>(app.get_subcommands().front()->get_name());
    rep->check("error", false, e.what());
  }
  std::cout << rep->to_json().dump(2) << "\n";
  return rep->ok() ? 0 : 1;
}
