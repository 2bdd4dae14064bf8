#include "tailchain/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tailchain/asymptotics.hpp"
#include "tailchain/core.hpp"
#include "tailchain/csv.hpp"
#include "tailchain/experiments.hpp"
#include "tailchain/oracle.hpp"
#include "tailchain/version.hpp"

namespace tailchain {

namespace {

using MetaEntries = std::vector<std::pair<std::string, std::string>>;

std::vector<double> parse_grid(double gmin, double gmax, unsigned points,
                               bool custom) {
    if (!custom) return default_grid();
    if (!(gmax > gmin) || points < 2)
        throw argument_error("grid: need max > min and >= 2 points");
    std::vector<double> g(points);
    for (unsigned j = 0; j < points; ++j)
        g[j] = gmin + (gmax - gmin) * static_cast<double>(j) /
                          static_cast<double>(points - 1);
    return g;
}

std::vector<double> parse_x_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw argument_error("asymvar: bad x list entry '" + item + "'");
        }
    }
    if (out.empty()) throw argument_error("asymvar: empty x list");
    return out;
}

struct SimulateOpts {
    std::string model = "tcopula";
    double nu1 = 2.0, nu2 = 2.5, rho = 0.2;
    std::string c_law = "normal(0.3333333333333333,0.8888888888888889)";
    std::string d_law = "normal(-10,1)";
    double alpha_true = 2.0;
    std::size_t n = 2000, burn_in = 1000;
    std::uint64_t seed = 1;
    bool prices = false;
    std::string out = "series.csv";
};

Law law_from_descriptor(const std::string& desc) {
    // reuse the spec-file descriptor syntax through a scratch file-free parse
    const auto open = desc.find('(');
    if (open == std::string::npos || desc.empty() || desc.back() != ')')
        throw argument_error("bad law descriptor '" + desc + "' (use family(a,b))");
    const std::string name = desc.substr(0, open);
    std::string args = desc.substr(open + 1, desc.size() - open - 2);
    const auto comma = args.find(',');
    if (comma == std::string::npos)
        throw argument_error("law descriptor needs two parameters");
    double a = 0.0, b = 0.0;
    try {
        a = std::stod(args.substr(0, comma));
        b = std::stod(args.substr(comma + 1));
    } catch (...) {
        throw argument_error("unparseable law parameters in '" + desc + "'");
    }
    if (name == "normal") return NormalLaw{a, b};
    if (name == "lognormal") return LognormalLaw{a, b};
    throw argument_error("unknown law family '" + name + "'");
}

int run_simulate(const SimulateOpts& o) {
    TimeSeries series = [&] {
        if (o.model == "tcopula") {
            TCopulaMarkovConfig cfg{o.nu1, o.nu2, o.rho, o.burn_in};
            return simulate_tcopula_chain(cfg, o.n, o.seed);
        }
        if (o.model == "sre") {
            SREConfig cfg{law_from_descriptor(o.c_law), law_from_descriptor(o.d_law),
                          o.burn_in, o.alpha_true};
            return simulate_sre(cfg, o.n, o.seed);
        }
        throw argument_error("simulate: unknown model '" + o.model + "'");
    }();

    MetaEntries meta{{"command", "simulate"},
                     {"model", o.model},
                     {"n", std::to_string(o.n)},
                     {"burn_in", std::to_string(o.burn_in)},
                     {"seed", std::to_string(o.seed)},
                     {"version", version}};
    if (o.model == "tcopula") {
        meta.emplace_back("nu1", format_double(o.nu1));
        meta.emplace_back("nu2", format_double(o.nu2));
        meta.emplace_back("rho", format_double(o.rho));
    } else {
        meta.emplace_back("c_law", o.c_law);
        meta.emplace_back("d_law", o.d_law);
        meta.emplace_back("alpha_true", format_double(o.alpha_true));
    }

    if (o.prices) {
        PriceSeries prices;
        double log_price = std::log(100.0);
        prices.dates.push_back("t000000");
        prices.close.push_back(std::exp(log_price));
        char buf[16];
        for (std::size_t i = 0; i < series.size(); ++i) {
            log_price += 0.01 * series[i];
            std::snprintf(buf, sizeof buf, "t%06zu", i + 1);
            prices.dates.emplace_back(buf);
            prices.close.push_back(std::exp(log_price));
        }
        write_prices_csv(o.out, prices);
        meta.emplace_back("output", "prices");
    } else {
        write_series_csv(o.out, series.values());
        meta.emplace_back("output", "series");
    }
    write_metadata(o.out + ".meta", meta);
    return 0;
}

struct EstimateOpts {
    std::string in;
    double quantile = 0.975;
    double threshold = 0.0; // 0: use quantile
    std::string alpha_mode = "rank";
    double alpha = 0.0; // required for known
    std::string target = "A1";
    std::string estimator = "monotonized_mixture";
    bool reversed = false;
    double grid_min = -3.0, grid_max = 3.0;
    unsigned grid_points = 201;
    bool custom_grid = false;
    std::string out = "cdf.csv";
};

int run_estimate(const EstimateOpts& o) {
    const TimeSeries raw(read_series_csv(o.in));
    const std::vector<double> grid =
        parse_grid(o.grid_min, o.grid_max, o.grid_points, o.custom_grid);
    const AlphaMode mode = alpha_mode_from_string(o.alpha_mode);
    Threshold u = o.threshold > 0.0 ? Threshold{o.threshold, std::nullopt}
                                    : threshold_from_quantile(raw, o.quantile);

    const TimeSeries* series = &raw;
    std::optional<TimeSeries> transformed;
    double alpha = 0.0;
    switch (mode) {
        case AlphaMode::known:
            if (!(o.alpha > 0.0))
                throw argument_error("estimate: --alpha required for --alpha-mode known");
            alpha = o.alpha;
            break;
        case AlphaMode::plugin:
            alpha = hill_alpha(raw, u).alpha;
            break;
        case AlphaMode::rank: {
            transformed = rank_transform(raw);
            std::size_t k = 0;
            for (double v : raw.values())
                if (std::fabs(v) > u.level) ++k;
            if (k == 0) throw no_exceedance_error("estimate: no exceedances above threshold");
            u = matched_count_threshold(*transformed, k);
            series = &*transformed;
            alpha = 1.0;
            break;
        }
    }

    const Target target = target_from_string(o.target);
    const EstimatorKind kind = estimator_kind_from_string(o.estimator);
    CdfEstimate est;
    if (o.reversed) {
        est = estimate_reversed(*series, u, kind, alpha, target, grid);
    } else {
        switch (kind) {
            case EstimatorKind::forward:
                est = forward_cdf(*series, u, target, grid);
                break;
            case EstimatorKind::backward:
                est = backward_cdf(*series, u, alpha, target, grid);
                break;
            case EstimatorKind::mixture:
                est = mixture_cdf(forward_cdf(*series, u, target, grid),
                                  backward_cdf(*series, u, alpha, target, grid));
                break;
            case EstimatorKind::monotonized_mixture:
                est = monotonize(mixture_cdf(forward_cdf(*series, u, target, grid),
                                             backward_cdf(*series, u, alpha, target, grid)));
                break;
        }
    }
    est.meta.alpha_mode = mode;
    if (kind != EstimatorKind::forward) est.meta.alpha = alpha;
    if (est.meta.glue_warning)
        std::cerr << "warning: monotonized branches do not glue monotonically at 0\n";
    write_cdf_csv(o.out, est);
    write_metadata(o.out + ".meta",
                   {{"command", "estimate"},
                    {"in", o.in},
                    {"quantile", format_double(o.quantile)},
                    {"threshold", format_double(u.level)},
                    {"alpha_mode", o.alpha_mode},
                    {"alpha", format_double(alpha)},
                    {"target", o.target},
                    {"estimator", o.estimator},
                    {"reversed", o.reversed ? "1" : "0"},
                    {"n_exceedances", std::to_string(est.meta.n_exceedances)},
                    {"version", version}});
    return 0;
}

struct MCStudyOpts {
    std::string model = "tcopula";
    double nu1 = 2.0, nu2 = 2.5, rho = 0.2;
    std::string c_law = "normal(0.3333333333333333,0.8888888888888889)";
    std::string d_law = "normal(-10,1)";
    double alpha_true = 2.0;
    std::size_t n = 2000, reps = 1000, burn_in = 1000;
    double quantile = 0.975;
    std::string alpha_mode = "rank";
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out = "mc";
};

int run_mc_study_cmd(const MCStudyOpts& o) {
    MCStudyConfig cfg;
    if (o.model == "tcopula") {
        cfg.model = TCopulaMarkovConfig{o.nu1, o.nu2, o.rho, o.burn_in};
    } else if (o.model == "sre") {
        cfg.model = SREConfig{law_from_descriptor(o.c_law), law_from_descriptor(o.d_law),
                              o.burn_in, o.alpha_true};
    } else {
        throw argument_error("mc-study: unknown model '" + o.model + "'");
    }
    cfg.n = o.n;
    cfg.reps = o.reps;
    cfg.quantile = o.quantile;
    cfg.alpha_mode = alpha_mode_from_string(o.alpha_mode);
    cfg.master_seed = o.seed;
    cfg.threads = o.threads;

    const MCStudyResult result = run_mc_study(cfg);
    write_mc_study_csv(o.out + "_a1.csv", result, Target::A1);
    write_mc_study_csv(o.out + "_b1.csv", result, Target::B1);
    write_mc_summary_csv(o.out + "_summary.csv", result);

    MetaEntries meta{{"command", "mc-study"},
                     {"model", o.model},
                     {"n", std::to_string(o.n)},
                     {"reps", std::to_string(o.reps)},
                     {"burn_in", std::to_string(o.burn_in)},
                     {"quantile", format_double(o.quantile)},
                     {"alpha_mode", o.alpha_mode},
                     {"master_seed", std::to_string(o.seed)},
                     {"seed_derivation", "splitmix64(master + golden*(rep_index+1))"},
                     {"rep0_seed", std::to_string(derive_seed(o.seed, 0))},
                     {"truth", result.truth_tag},
                     {"version", version}};
    if (o.model == "tcopula") {
        meta.emplace_back("nu1", format_double(o.nu1));
        meta.emplace_back("nu2", format_double(o.nu2));
        meta.emplace_back("rho", format_double(o.rho));
    } else {
        meta.emplace_back("c_law", o.c_law);
        meta.emplace_back("d_law", o.d_law);
        meta.emplace_back("alpha_true", format_double(o.alpha_true));
    }
    write_metadata(o.out + ".meta", meta);
    return 0;
}

struct CaseStudyOpts {
    std::string prices;
    double quantile = 0.95;
    double grid_min = -3.0, grid_max = 3.0;
    unsigned grid_points = 201;
    bool custom_grid = false;
    std::string out = "case";
};

int run_case_study_cmd(const CaseStudyOpts& o) {
    const std::vector<double> grid =
        parse_grid(o.grid_min, o.grid_max, o.grid_points, o.custom_grid);
    const CaseStudyResult result = run_case_study(o.prices, o.quantile, grid);
    write_cdf_csv(o.out + "_a1_star.csv", result.a1_star);
    write_cdf_csv(o.out + "_a1_rev_star.csv", result.a1_rev_star);
    write_cdf_csv(o.out + "_b1_star.csv", result.b1_star);
    write_cdf_csv(o.out + "_b1_rev_star.csv", result.b1_rev_star);
    {
        std::ofstream f(o.out + "_summary.csv");
        if (!f) throw data_error("cannot open " + o.out + "_summary.csv");
        f << "stat,value\n";
        f << "n_obs," << result.n_obs << "\n";
        f << "n_extremes," << result.n_extremes << "\n";
        f << "n_pos," << result.n_pos << "\n";
        f << "n_neg," << result.n_neg << "\n";
        f << "alpha_hat," << format_double(result.alpha_hat) << "\n";
    }
    write_metadata(o.out + ".meta", {{"command", "case-study"},
                                     {"prices", o.prices},
                                     {"quantile", format_double(o.quantile)},
                                     {"n_obs", std::to_string(result.n_obs)},
                                     {"n_extremes", std::to_string(result.n_extremes)},
                                     {"version", version}});
    return 0;
}

struct AsymvarOpts {
    std::string spec;
    std::string x_list = "0.5,1,2";
    std::size_t n = 10000;
    double v_n = 0.025;
    std::size_t K = 100;
    std::size_t paths = 1000000;
    std::uint64_t seed = 1;
    std::string out = "asymvar.csv";
};

int run_asymvar(const AsymvarOpts& o) {
    const TailChainSpec spec = read_spec_file(o.spec);
    const std::vector<double> xs = parse_x_list(o.x_list);
    std::ofstream f(o.out);
    if (!f) throw data_error("cannot open " + o.out);
    const bool extra = spec.alpha != 1.0;
    f << "x,var_f,var_b,sd_pred_f,sd_pred_b,cov_fb,tail_diag";
    if (extra) f << ",var_b_alpha1_form";
    f << "\n";
    for (double x : xs) {
        const double vf = var_forward(spec, x);
        const double vb = var_backward(spec, x);
        const AsymptoticCov fb = cross_cov_fb(spec, x, x, o.K, o.paths, o.seed);
        f << format_double(x) << "," << format_double(vf) << "," << format_double(vb)
          << "," << format_double(predicted_sd(spec, EstimatorKind::forward, x, o.n, o.v_n))
          << "," << format_double(predicted_sd(spec, EstimatorKind::backward, x, o.n, o.v_n))
          << "," << format_double(fb.value) << "," << format_double(fb.tail_prob_K);
        if (extra) {
            // value under the printed exponent -1 instead of -alpha
            const double fx = law_survival(spec.a1_law, x);
            const double printed = upper_moment(spec.a1_law, -1.0, x) - fx * fx;
            f << "," << format_double(printed);
        }
        f << "\n";
    }
    write_metadata(o.out + ".meta", {{"command", "asymvar"},
                                     {"spec", o.spec},
                                     {"x", o.x_list},
                                     {"n", std::to_string(o.n)},
                                     {"v_n", format_double(o.v_n)},
                                     {"K", std::to_string(o.K)},
                                     {"paths", std::to_string(o.paths)},
                                     {"seed", std::to_string(o.seed)},
                                     {"version", version}});
    return 0;
}

struct VerifyOpts {
    std::string spec;
    std::string out;
};

struct VerifyLine {
    std::string name;
    bool pass = false;
    double deviation = 0.0;
    std::string note;
};

double law_gap(const DiscreteLaw& a, const DiscreteLaw& b) {
    double gap = 0.0;
    std::vector<double> support(a.atoms);
    support.insert(support.end(), b.atoms.begin(), b.atoms.end());
    for (double atom : support)
        gap = std::max(gap, std::fabs(a.mass_at(atom) - b.mass_at(atom)));
    return gap;
}

int run_verify(const VerifyOpts& o) {
    const TailChainSpec spec = read_spec_file(o.spec);
    std::vector<VerifyLine> lines;

    // duality round trip
    {
        VerifyLine l{"duality_round_trip", false, 0.0, ""};
        const BackwardLaws back = backward_from_forward(spec);
        const ForwardLaws fwd =
            forward_from_backward(back.a_minus1, back.b_minus1, spec.p, spec.alpha);
        double dev = std::fabs(back.p_check - spec.p);
        if (spec.p > 0.0 && fwd.a1)
            dev = std::max(dev, law_gap(*fwd.a1, as_discrete(spec.a1_law)));
        if (spec.p < 1.0 && fwd.b1)
            dev = std::max(dev, law_gap(*fwd.b1, as_discrete(spec.b1_law)));
        l.deviation = dev;
        l.pass = dev <= 1e-12;
        lines.push_back(l);
    }

    // time-change identities over a family of indicator/power functionals
    {
        VerifyLine l{"time_change_identities", false, 0.0, ""};
        double dev = 0.0;
        const double cuts[] = {-1.5, -0.5, 0.25, 0.75, 1.25};
        for (int i = -2; i <= 2; ++i) {
            for (int s = -1; s <= 0; ++s) {
                for (int t = 0; t <= 1; ++t) {
                    if (std::max({std::abs(s), std::abs(t), std::abs(s - i),
                                  std::abs(t - i)}) > 3)
                        continue;
                    for (double c : cuts) {
                        auto f = [&, c](std::span<const double> y) {
                            const double y0 = y[static_cast<std::size_t>(-s)];
                            if (y0 == 0.0) return 0.0;
                            double v = y0 > c ? 1.0 : 0.0;
                            for (std::size_t j = 0; j < y.size(); ++j)
                                v *= 1.0 + 0.1 * static_cast<double>(j) *
                                               (y[j] > 0.0 ? 1.0 : 0.0);
                            return v;
                        };
                        const TimeChangePair pair =
                            verify_time_change(spec, f, s, t, i, 3);
                        dev = std::max(dev, std::fabs(pair.lhs - pair.rhs));
                    }
                }
            }
        }
        l.deviation = dev;
        l.pass = dev <= 1e-12;
        lines.push_back(l);
    }

    // standardization commutes with the duality
    {
        VerifyLine l{"standardize_commutes", false, 0.0, ""};
        const TailChainSpec star = standardize_spec(spec);
        const BackwardLaws b1 = backward_from_forward(star);
        const BackwardLaws b2 = backward_from_forward(spec);
        double dev = 0.0;
        auto star_law = [&](const DiscreteLaw& d) {
            std::vector<double> atoms(d.atoms.size());
            for (std::size_t j = 0; j < d.atoms.size(); ++j) {
                const double a = d.atoms[j];
                const double sg = a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
                atoms[j] = sg * std::pow(std::fabs(a), spec.alpha);
            }
            return DiscreteLaw::make(std::move(atoms), d.masses);
        };
        if (b1.a_minus1 && b2.a_minus1)
            dev = std::max(dev, law_gap(*b1.a_minus1, star_law(*b2.a_minus1)));
        if (b1.b_minus1 && b2.b_minus1)
            dev = std::max(dev, law_gap(*b1.b_minus1, star_law(*b2.b_minus1)));
        l.deviation = dev;
        l.pass = dev <= 1e-12;
        lines.push_back(l);
    }

    // sign-balance lemma, when the preconditions hold
    {
        const TailSignVerdict v = check_tailsign(spec);
        VerifyLine l{"tailsign", true, std::fabs(v.constraint_value), v.detail};
        if (v.status == TailSignVerdict::Status::fail) l.pass = false;
        if (v.status == TailSignVerdict::Status::not_applicable) {
            l.pass = true;
            l.note = "not applicable: " + v.detail;
        }
        lines.push_back(l);
    }

    std::ostringstream report;
    bool all_pass = true;
    for (const auto& l : lines) {
        report << (l.pass ? "PASS" : "FAIL") << " " << l.name
               << " max_deviation=" << format_double(l.deviation);
        if (!l.note.empty()) report << " (" << l.note << ")";
        report << "\n";
        all_pass = all_pass && l.pass;
    }
    report << (all_pass ? "PASS" : "FAIL") << " overall\n";
    std::cout << report.str();
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw data_error("cannot open " + o.out);
        f << report.str();
        write_metadata(o.out + ".meta", {{"command", "verify"},
                                         {"spec", o.spec},
                                         {"version", version}});
    }
    return all_pass ? 0 : 2;
}

} // namespace

int cli_dispatch(const std::vector<std::string>& argv) {
    CLI::App app{"spectral tail-chain estimation for heavy-tailed Markov time series"};
    app.require_subcommand(1);

    SimulateOpts sim;
    auto* c_sim = app.add_subcommand("simulate", "simulate a reference model");
    c_sim->add_option("--model", sim.model, "tcopula|sre");
    c_sim->add_option("--nu1", sim.nu1, "margin degrees of freedom (tcopula)");
    c_sim->add_option("--nu2", sim.nu2, "copula degrees of freedom (tcopula)");
    c_sim->add_option("--rho", sim.rho, "copula correlation (tcopula)");
    c_sim->add_option("--c-law", sim.c_law, "coefficient law (sre)");
    c_sim->add_option("--d-law", sim.d_law, "innovation law (sre)");
    c_sim->add_option("--alpha-true", sim.alpha_true, "declared tail index (sre)");
    c_sim->add_option("--n", sim.n, "series length");
    c_sim->add_option("--burn-in", sim.burn_in, "discarded initial steps");
    c_sim->add_option("--seed", sim.seed, "rng seed");
    c_sim->add_flag("--prices", sim.prices, "emit a date,close price fixture");
    c_sim->add_option("--out", sim.out, "output csv");

    EstimateOpts est;
    auto* c_est = app.add_subcommand("estimate", "estimate increment cdfs from a series");
    c_est->add_option("--in", est.in, "input series csv")->required();
    c_est->add_option("--quantile", est.quantile, "threshold quantile of |X|");
    c_est->add_option("--threshold", est.threshold, "explicit threshold level");
    c_est->add_option("--alpha-mode", est.alpha_mode, "known|plugin|rank");
    c_est->add_option("--alpha", est.alpha, "tail index for --alpha-mode known");
    c_est->add_option("--target", est.target, "A1|B1");
    c_est->add_option("--estimator", est.estimator,
                      "forward|backward|mixture|monotonized_mixture");
    c_est->add_flag("--reversed", est.reversed, "estimate on the reversed series");
    auto* eg1 = c_est->add_option("--grid-min", est.grid_min, "grid start");
    auto* eg2 = c_est->add_option("--grid-max", est.grid_max, "grid end");
    auto* eg3 = c_est->add_option("--grid-points", est.grid_points, "grid size");
    c_est->add_option("--out", est.out, "output csv");

    MCStudyOpts mc;
    auto* c_mc = app.add_subcommand("mc-study", "Monte Carlo bias/SD/RMSE study");
    c_mc->add_option("--model", mc.model, "tcopula|sre");
    c_mc->add_option("--nu1", mc.nu1, "margin df (tcopula)");
    c_mc->add_option("--nu2", mc.nu2, "copula df (tcopula)");
    c_mc->add_option("--rho", mc.rho, "copula correlation (tcopula)");
    c_mc->add_option("--c-law", mc.c_law, "coefficient law (sre)");
    c_mc->add_option("--d-law", mc.d_law, "innovation law (sre)");
    c_mc->add_option("--alpha-true", mc.alpha_true, "declared tail index (sre)");
    c_mc->add_option("--n", mc.n, "series length per replication");
    c_mc->add_option("--reps", mc.reps, "replications");
    c_mc->add_option("--burn-in", mc.burn_in, "burn-in steps");
    c_mc->add_option("--quantile", mc.quantile, "threshold quantile");
    c_mc->add_option("--alpha-mode", mc.alpha_mode, "plugin|rank");
    c_mc->add_option("--seed", mc.seed, "master seed");
    c_mc->add_option("--threads", mc.threads, "worker threads (0 = auto)");
    c_mc->add_option("--out", mc.out, "output prefix");

    CaseStudyOpts cs;
    auto* c_cs = app.add_subcommand("case-study", "price-series pipeline");
    c_cs->add_option("--prices", cs.prices, "date,close csv")->required();
    c_cs->add_option("--quantile", cs.quantile, "threshold quantile of |returns|");
    auto* cg1 = c_cs->add_option("--grid-min", cs.grid_min, "grid start");
    auto* cg2 = c_cs->add_option("--grid-max", cs.grid_max, "grid end");
    auto* cg3 = c_cs->add_option("--grid-points", cs.grid_points, "grid size");
    c_cs->add_option("--out", cs.out, "output prefix");

    AsymvarOpts av;
    auto* c_av = app.add_subcommand("asymvar", "limit variances for a tail-chain spec");
    c_av->add_option("--spec", av.spec, "spec file")->required();
    c_av->add_option("--x", av.x_list, "comma-separated evaluation points");
    c_av->add_option("--n", av.n, "sample size for predicted sds");
    c_av->add_option("--vn", av.v_n, "exceedance probability for predicted sds");
    c_av->add_option("--K", av.K, "series truncation");
    c_av->add_option("--paths", av.paths, "Monte Carlo paths");
    c_av->add_option("--seed", av.seed, "rng seed");
    c_av->add_option("--out", av.out, "output csv");

    VerifyOpts vf;
    auto* c_vf = app.add_subcommand("verify", "run the exact identity suite on a spec");
    c_vf->add_option("--spec", vf.spec, "spec file")->required();
    c_vf->add_option("--out", vf.out, "write the report to a file");

    std::vector<const char*> cargv;
    cargv.reserve(argv.size());
    for (const auto& a : argv) cargv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
        est.custom_grid = eg1->count() || eg2->count() || eg3->count();
        cs.custom_grid = cg1->count() || cg2->count() || cg3->count();
        if (c_sim->parsed()) return run_simulate(sim);
        if (c_est->parsed()) return run_estimate(est);
        if (c_mc->parsed()) return run_mc_study_cmd(mc);
        if (c_cs->parsed()) return run_case_study_cmd(cs);
        if (c_av->parsed()) return run_asymvar(av);
        if (c_vf->parsed()) return run_verify(vf);
        return 1;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 1;
    } catch (const argument_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace tailchain
