#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <span>

#include "tailchain/asymptotics.hpp"
#include "tailchain/core.hpp"
#include "tailchain/estimators.hpp"
#include "tailchain/experiments.hpp"
#include "tailchain/models.hpp"
#include "tailchain/oracle.hpp"
#include "tailchain/version.hpp"

namespace py = pybind11;
using namespace tailchain;

namespace {

TailChainSpec make_spec(double p, double alpha, const std::vector<double>& a_atoms,
                        const std::vector<double>& a_masses,
                        const std::vector<double>& b_atoms,
                        const std::vector<double>& b_masses) {
    TailChainSpec spec;
    spec.p = p;
    spec.alpha = alpha;
    spec.a1_law = DiscreteLaw::make(a_atoms, a_masses);
    spec.b1_law = b_atoms.empty() ? Law{DiscreteLaw::make({1.0}, {1.0})}
                                  : Law{DiscreteLaw::make(b_atoms, b_masses)};
    return spec;
}

py::dict cdf_to_dict(const CdfEstimate& est) {
    py::dict meta;
    meta["estimator"] = to_string(est.meta.estimator);
    meta["target"] = to_string(est.meta.target);
    meta["alpha_mode"] = to_string(est.meta.alpha_mode);
    meta["alpha"] = est.meta.alpha;
    meta["threshold"] = est.meta.threshold.level;
    meta["n_exceedances"] = est.meta.n_exceedances;
    meta["glue_warning"] = est.meta.glue_warning;
    py::dict out;
    out["grid"] = est.grid;
    out["values"] = est.values;
    out["meta"] = meta;
    return out;
}

py::dict law_to_dict(const std::optional<DiscreteLaw>& law) {
    py::dict out;
    if (law) {
        out["atoms"] = law->atoms;
        out["masses"] = law->masses;
    }
    return out;
}

CdfEstimate estimate_one(const TimeSeries& series, const Threshold& u,
                         EstimatorKind kind, double alpha, Target target,
                         std::span<const double> grid, bool reversed) {
    if (reversed) return estimate_reversed(series, u, kind, alpha, target, grid);
    switch (kind) {
        case EstimatorKind::forward: return forward_cdf(series, u, target, grid);
        case EstimatorKind::backward:
            return backward_cdf(series, u, alpha, target, grid);
        case EstimatorKind::mixture:
            return mixture_cdf(forward_cdf(series, u, target, grid),
                               backward_cdf(series, u, alpha, target, grid));
        case EstimatorKind::monotonized_mixture:
            return monotonize(mixture_cdf(forward_cdf(series, u, target, grid),
                                          backward_cdf(series, u, alpha, target, grid)));
    }
    throw argument_error("unknown estimator kind");
}

} // namespace

PYBIND11_MODULE(_tailchain, m) {
    m.doc() = "Spectral tail-chain estimation for heavy-tailed Markov time series";
    m.attr("__version__") = version;

    py::register_exception<argument_error>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<data_error>(m, "DataError", PyExc_ValueError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);

    m.def(
        "simulate_tcopula_chain",
        [](std::size_t n, double nu_margin, double nu_copula, double rho,
           std::size_t burn_in, std::uint64_t seed) {
            TCopulaMarkovConfig cfg{nu_margin, nu_copula, rho, burn_in};
            return simulate_tcopula_chain(cfg, n, seed).values();
        },
        py::arg("n"), py::arg("nu_margin") = 2.0, py::arg("nu_copula") = 2.5,
        py::arg("rho") = 0.2, py::arg("burn_in") = 1000, py::arg("seed") = 1,
        "Simulate the stationary t-copula Markov chain with Student-t margin.");

    m.def(
        "simulate_sre",
        [](std::size_t n, double c_mean, double c_variance, double d_mean,
           double d_variance, std::size_t burn_in, double alpha_true,
           std::uint64_t seed) {
            SREConfig cfg{NormalLaw{c_mean, c_variance}, NormalLaw{d_mean, d_variance},
                          burn_in, alpha_true};
            return simulate_sre(cfg, n, seed).values();
        },
        py::arg("n"), py::arg("c_mean") = 1.0 / 3.0,
        py::arg("c_variance") = 8.0 / 9.0, py::arg("d_mean") = -10.0,
        py::arg("d_variance") = 1.0, py::arg("burn_in") = 1000,
        py::arg("alpha_true") = 2.0, py::arg("seed") = 1,
        "Simulate X_t = C_t X_{t-1} + D_t with independent normal coefficients.");

    m.def(
        "threshold_from_quantile",
        [](const std::vector<double>& values, double q) {
            return threshold_from_quantile(TimeSeries(values), q).level;
        },
        py::arg("values"), py::arg("q"));

    m.def(
        "estimate_p",
        [](const std::vector<double>& values, double u) {
            const TailBalanceEstimate e =
                estimate_p(TimeSeries(values), Threshold{u, std::nullopt});
            py::dict out;
            out["p"] = e.p;
            out["n_pos"] = e.n_pos;
            out["n_neg"] = e.n_neg;
            return out;
        },
        py::arg("values"), py::arg("u"));

    m.def(
        "hill_alpha",
        [](const std::vector<double>& values, double u) {
            const TailIndexEstimate e =
                hill_alpha(TimeSeries(values), Threshold{u, std::nullopt});
            py::dict out;
            out["alpha"] = e.alpha;
            out["n_exceedances"] = e.n_exceedances;
            return out;
        },
        py::arg("values"), py::arg("u"));

    m.def(
        "rank_transform",
        [](const std::vector<double>& values) {
            return rank_transform(TimeSeries(values)).values();
        },
        py::arg("values"));

    m.def(
        "log_returns",
        [](const std::vector<double>& prices) {
            return log_returns(prices).values();
        },
        py::arg("prices"));

    m.def("default_grid", &default_grid);
    m.def("mixture_weight", &mixture_weight, py::arg("x"));

    m.def(
        "estimate_cdf",
        [](const std::vector<double>& values, double quantile,
           const std::string& estimator, const std::string& target,
           const std::string& alpha_mode, double alpha, bool reversed,
           std::optional<std::vector<double>> grid) {
            const TimeSeries raw(values);
            const std::vector<double> g = grid ? *grid : default_grid();
            Threshold u = threshold_from_quantile(raw, quantile);
            const AlphaMode mode = alpha_mode_from_string(alpha_mode);
            const TimeSeries* series = &raw;
            std::optional<TimeSeries> transformed;
            double a = alpha;
            if (mode == AlphaMode::rank) {
                transformed = rank_transform(raw);
                std::size_t k = 0;
                for (double v : raw.values())
                    if (std::fabs(v) > u.level) ++k;
                u = matched_count_threshold(*transformed, k);
                series = &*transformed;
                a = 1.0;
            } else if (mode == AlphaMode::plugin) {
                a = hill_alpha(raw, u).alpha;
            } else if (!(a > 0.0)) {
                throw argument_error("estimate_cdf: alpha required for known mode");
            }
            CdfEstimate est =
                estimate_one(*series, u, estimator_kind_from_string(estimator), a,
                             target_from_string(target), g, reversed);
            est.meta.alpha_mode = mode;
            return cdf_to_dict(est);
        },
        py::arg("values"), py::arg("quantile") = 0.975,
        py::arg("estimator") = "monotonized_mixture", py::arg("target") = "A1",
        py::arg("alpha_mode") = "rank", py::arg("alpha") = 0.0,
        py::arg("reversed") = false, py::arg("grid") = std::nullopt,
        "Forward/backward/mixture cdf estimate of a tail-chain increment law.");

    m.def(
        "true_cdf_a1_tcopula",
        [](double x, double alpha, double p, double nu_margin, double nu_copula,
           double rho) {
            TCopulaMarkovConfig cfg{nu_margin, nu_copula, rho, 0};
            return true_cdf_A1_tcopula(cfg, alpha, p, x);
        },
        py::arg("x"), py::arg("alpha") = 2.0, py::arg("p") = 0.5,
        py::arg("nu_margin") = 2.0, py::arg("nu_copula") = 2.5, py::arg("rho") = 0.2);

    m.def(
        "true_cdf_a1_evcopula",
        [](double x, double alpha, const std::string& family, double theta,
           double psi1, double psi2) {
            EVCopulaModel model;
            model.family = family == "asymmetric_negative_logistic"
                               ? EVFamily::asymmetric_negative_logistic
                               : EVFamily::asymmetric_logistic;
            model.theta = theta;
            model.psi1 = psi1;
            model.psi2 = psi2;
            return true_cdf_A1_evcopula(model, alpha, x);
        },
        py::arg("x"), py::arg("alpha"), py::arg("family") = "asymmetric_logistic",
        py::arg("theta") = 2.0, py::arg("psi1") = 1.0, py::arg("psi2") = 1.0);

    m.def(
        "backward_from_forward",
        [](double p, double alpha, const std::vector<double>& a_atoms,
           const std::vector<double>& a_masses, const std::vector<double>& b_atoms,
           const std::vector<double>& b_masses) {
            const BackwardLaws back =
                backward_from_forward(make_spec(p, alpha, a_atoms, a_masses, b_atoms,
                                                b_masses));
            py::dict out;
            out["a_minus1"] = law_to_dict(back.a_minus1);
            out["b_minus1"] = law_to_dict(back.b_minus1);
            out["p_check"] = back.p_check;
            return out;
        },
        py::arg("p"), py::arg("alpha"), py::arg("a_atoms"), py::arg("a_masses"),
        py::arg("b_atoms") = std::vector<double>{},
        py::arg("b_masses") = std::vector<double>{},
        "Exact laws of the backward increments via the time-change duality.");

    m.def(
        "forward_from_backward",
        [](double p, double alpha, const std::vector<double>& am_atoms,
           const std::vector<double>& am_masses, const std::vector<double>& bm_atoms,
           const std::vector<double>& bm_masses) {
            std::optional<DiscreteLaw> am, bm;
            if (!am_atoms.empty()) am = DiscreteLaw::make(am_atoms, am_masses);
            if (!bm_atoms.empty()) bm = DiscreteLaw::make(bm_atoms, bm_masses);
            const ForwardLaws fwd = forward_from_backward(am, bm, p, alpha);
            py::dict out;
            out["a1"] = law_to_dict(fwd.a1);
            out["b1"] = law_to_dict(fwd.b1);
            return out;
        },
        py::arg("p"), py::arg("alpha"), py::arg("am_atoms"), py::arg("am_masses"),
        py::arg("bm_atoms") = std::vector<double>{},
        py::arg("bm_masses") = std::vector<double>{});

    m.def(
        "verify_time_change",
        [](double p, double alpha, const std::vector<double>& a_atoms,
           const std::vector<double>& a_masses, const std::vector<double>& b_atoms,
           const std::vector<double>& b_masses,
           const std::function<double(std::vector<double>)>& f, int s, int t, int i,
           int horizon) {
            const TailChainSpec spec =
                make_spec(p, alpha, a_atoms, a_masses, b_atoms, b_masses);
            auto wrapped = [&f](std::span<const double> y) {
                return f(std::vector<double>(y.begin(), y.end()));
            };
            const TimeChangePair pair = verify_time_change(spec, wrapped, s, t, i, horizon);
            return py::make_tuple(pair.lhs, pair.rhs);
        },
        py::arg("p"), py::arg("alpha"), py::arg("a_atoms"), py::arg("a_masses"),
        py::arg("b_atoms"), py::arg("b_masses"), py::arg("f"), py::arg("s"),
        py::arg("t"), py::arg("i"), py::arg("horizon") = 3,
        "Evaluate both sides of the time-change identity by exact enumeration.");

    m.def(
        "var_forward",
        [](double x, double alpha, const std::vector<double>& atoms,
           const std::vector<double>& masses) {
            TailChainSpec spec;
            spec.p = 1.0;
            spec.alpha = alpha;
            spec.a1_law = DiscreteLaw::make(atoms, masses);
            spec.b1_law = DiscreteLaw::make({1.0}, {1.0});
            return var_forward(spec, x);
        },
        py::arg("x"), py::arg("alpha"), py::arg("atoms"), py::arg("masses"));

    m.def(
        "var_backward",
        [](double x, double alpha, const std::vector<double>& atoms,
           const std::vector<double>& masses) {
            TailChainSpec spec;
            spec.p = 1.0;
            spec.alpha = alpha;
            spec.a1_law = DiscreteLaw::make(atoms, masses);
            spec.b1_law = DiscreteLaw::make({1.0}, {1.0});
            return var_backward(spec, x);
        },
        py::arg("x"), py::arg("alpha"), py::arg("atoms"), py::arg("masses"));

    m.def(
        "make_price_fixture",
        [](std::size_t n_prices, std::uint64_t seed) {
            return make_price_fixture(n_prices, seed);
        },
        py::arg("n_prices"), py::arg("seed") = 1);

    m.def(
        "case_study",
        [](const std::vector<double>& closes, double quantile,
           std::optional<std::vector<double>> grid) {
            const std::vector<double> g = grid ? *grid : default_grid();
            const CaseStudyResult r = run_case_study(closes, quantile, g);
            py::dict out;
            out["n_obs"] = r.n_obs;
            out["n_extremes"] = r.n_extremes;
            out["n_pos"] = r.n_pos;
            out["n_neg"] = r.n_neg;
            out["alpha_hat"] = r.alpha_hat;
            out["a1_star"] = cdf_to_dict(r.a1_star);
            out["a1_rev_star"] = cdf_to_dict(r.a1_rev_star);
            out["b1_star"] = cdf_to_dict(r.b1_star);
            out["b1_rev_star"] = cdf_to_dict(r.b1_rev_star);
            return out;
        },
        py::arg("closes"), py::arg("quantile") = 0.95, py::arg("grid") = std::nullopt,
        "Log-returns, rank transform and monotonized mixture estimates of the "
        "four starred increment laws.");
}
