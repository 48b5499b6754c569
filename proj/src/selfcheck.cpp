#include <cmath>
#include <functional>
#include <sstream>

#include "incmgf/errors.hpp"
#include "incmgf/mixture.hpp"
#include "incmgf/sweep.hpp"

namespace incmgf {
namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

std::vector<FadingModel> sample_models() {
  return {FadingModel::kappa_mu_shadowed(1.5, 2.0, 3.0, 1.0), FadingModel::kappa_mu_shadowed(10.0, 0.5, 0.5, 10.0),
          FadingModel::kappa_mu(1.5, 2.0, 1.0),               FadingModel::eta_mu(0.04, 1.5, 10.0),
          FadingModel::rician_shadowed(10.0, 2.0, 1.0),        FadingModel::nakagami(2.0, 1.0),
          FadingModel::rayleigh(1.0)};
}

}  // namespace

std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& opts) {
  std::vector<CheckResult> out;
  auto check = [&](const std::string& name, const std::function<double()>& worst, double tol) {
    CheckResult r{name, false, ""};
    try {
      const double w = worst();
      r.pass = w <= tol;
      std::ostringstream os;
      os.precision(3);
      os << "worst " << w << " (limit " << tol << ")";
      r.detail = os.str();
    } catch (const std::exception& e) {
      r.detail = std::string("threw: ") + e.what();
    }
    out.push_back(r);
  };

  check("special-function reference values", [] {
    double w = 0.0;
    w = std::max(w, rel_err(specfun::marcum_q(1.0, 1.0, 1.0), 0.732879803796820218));
    w = std::max(w, rel_err(specfun::phi2({1.0, 2.0, 4.0, -0.5, -1.5}), 0.435020458364983759));
    w = std::max(w, rel_err(specfun::phi3({1.0, 3.0, -1.0, 2.0}), 1.42312876079756769));
    w = std::max(w, rel_err(specfun::exp_integral_ei(-1.0), -0.219383934395520274));
    w = std::max(w, rel_err(specfun::reg_lower_gamma(3.0, 2.5), 0.456186884116670482));
    return w;
  }, 1e-12);

  check("lower IMGF vs quadrature", [] {
    double w = 0.0;
    for (const auto& m : sample_models()) {
      for (double s : {-1.0, 0.0}) {
        const double z = m.mean_snr;
        w = std::max(w, rel_err(imgf_lower(m, s, z), quad_imgf(m, s, z, Tail::Lower)));
      }
    }
    return w;
  }, 1e-8);

  check("complementarity M^l + M^u = M", [] {
    double w = 0.0;
    for (const auto& m : sample_models()) {
      for (double s : {-5.0, -0.1, 0.0}) {
        for (double zr : {0.1, 1.0, 5.0}) {
          const double z = zr * m.mean_snr;
          const double full = mgf(m, s);
          w = std::max(w, std::abs(imgf_lower(m, s, z) + imgf_upper(m, s, z) - full) / full);
        }
      }
    }
    return w;
  }, 1e-10);

  check("CDF identity M^l(0, z) = F(z)", [] {
    double w = 0.0;
    for (const auto& m : sample_models()) {
      for (double zr : {0.1, 1.0, 5.0}) {
        const double z = zr * m.mean_snr;
        w = std::max(w, std::abs(imgf_lower(m, 0.0, z) - quad_imgf(m, 0.0, z, Tail::Lower)));
      }
    }
    return w;
  }, 1e-10);

  check("Laplace inversion vs closed form", [] {
    double w = 0.0;
    for (const auto& m : sample_models()) {
      for (double s : {-1.0, 0.0}) {
        for (double zr : {0.1, 1.0, 5.0}) {
          const double z = zr * m.mean_snr;
          w = std::max(w, rel_err(imgf_generic(mgf_image(m), s, z), imgf_lower(m, s, z)));
        }
      }
    }
    return w;
  }, 1e-6);

  check("reduction chains", [] {
    double w = 0.0;
    const auto rs = FadingModel::rician_shadowed(3.0, 2.0, 2.0);
    const auto kms = FadingModel::kappa_mu_shadowed(3.0, 1.0, 2.0, 2.0);
    w = std::max(w, rel_err(imgf_lower(rs, -0.5, 1.5), imgf_lower(kms, -0.5, 1.5)));
    w = std::max(w, rel_err(imgf_lower(FadingModel::eta_mu(0.3, 1.2, 2.0), -0.5, 1.5),
                            imgf_lower_eta_mu_direct(0.3, 1.2, 2.0, -0.5, 1.5)));
    w = std::max(w, rel_err(imgf_lower(FadingModel::rayleigh(2.0), -0.5, 1.5),
                            0.5 * (1.0 - std::exp(-1.5))));
    return w;
  }, 1e-10);

  check("gamma mixture vs closed-form CDF", [&opts] {
    double w = 0.0;
    for (double kappa : {0.5, 10.0}) {
      for (auto [mu, m] : {std::pair{3, 1}, std::pair{2, 2}, std::pair{1, 3}}) {
        GammaMixture mix = mixture_params(kappa, mu, m, 1.0);
        if (opts.corrupt_mixture) mix.terms.back().C *= 1.001;
        const auto model = FadingModel::kappa_mu_shadowed(kappa, mu, m, 1.0);
        for (double g : {0.1, 1.0, 3.0, 10.0}) w = std::max(w, std::abs(mixture_cdf(mix, g) - cdf(model, g)));
      }
    }
    return w;
  }, 1e-9);

  check("OPSC Rayleigh closed form", [] {
    SecrecyScenario sc{FadingModel::rayleigh(10.0), FadingModel::rayleigh(1.0), 0.1, 1};
    const double alpha = secrecy_alpha(0.1);
    const double want = 1.0 - std::exp(-alpha / 10.0) * 10.0 / (10.0 + std::exp2(0.1) * 1.0);
    return std::abs(opsc(sc) - want);
  }, 1e-9);

  check("interference outage delegates to OPSC", [] {
    const auto d = FadingModel::kappa_mu_shadowed(1.5, 2.0, 2.0, 10.0);
    const auto i = FadingModel::rayleigh(2.0);
    const double r = 0.7;
    const double g = secrecy_alpha(r);
    SecrecyScenario sc = interference_as_secrecy(d, i, g);
    sc.rate_rs = r;
    return outage_interference(d, i, g) == opsc(sc) ? 0.0 : 1.0;
  }, 0.0);

  check("capacity: Ei route vs direct quadrature", [] {
    CapacityScenario sc{FadingModel::rayleigh(10.0), std::nullopt};
    sc.cutoff_snr = solve_cutoff(sc.channel);
    return rel_err(capacity_side_info(sc), capacity_side_info_direct(sc));
  }, 1e-6);

  check("ABER single-region Rayleigh", [] {
    AdaptiveModScheme s{{0.0}, {4}};
    const double want = 0.2 / (1.0 + 1.5 * 10.0 / 15.0);
    return rel_err(aber_adaptive(FadingModel::rayleigh(10.0), s), want);
  }, 1e-10);

  check("s-derivative vs finite difference", [] {
    double w = 0.0;
    for (const auto& m : sample_models()) {
      const double s = -0.3 / m.mean_snr;
      const double z = m.mean_snr;
      const double h = 1e-5 * std::max(1.0, std::abs(s));
      const double fd = (imgf_upper(m, s + h, z) - imgf_upper(m, s - h, z)) / (2.0 * h);
      w = std::max(w, rel_err(imgf_deriv_s(m, s, z, 1, Tail::Upper), fd));
    }
    return w;
  }, 1e-4);

  check("Monte Carlo determinism", [] {
    SecrecyScenario sc{FadingModel::kappa_mu_shadowed(1.5, 2.0, 2.0, 10.0), FadingModel::rayleigh(1.0), 0.1, 1};
    McConfig mc;
    mc.n_samples = 200000;
    mc.seed = 7;
    const auto a = mc_opsc(sc, mc);
    const auto b = mc_opsc(sc, mc);
    return a.estimate == b.estimate && a.std_error == b.std_error ? 0.0 : 1.0;
  }, 0.0);

  return out;
}

}  // namespace incmgf
