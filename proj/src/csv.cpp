#include "tailchain/csv.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tailchain {

std::string format_double(double v) {
    char buf[40];
    // shortest form that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v || (std::isnan(back) && std::isnan(v))) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw data_error("cannot open for writing: " + path);
    return f;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("cannot open for reading: " + path);
    return f;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

} // namespace

std::vector<double> read_series_csv(const std::string& path) {
    auto f = open_in(path);
    std::vector<double> out;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        double v = 0.0;
        if (!parse_double(t, v)) {
            if (first) {
                first = false;
                continue; // header line
            }
            throw data_error("series csv: unparseable line '" + t + "' in " + path);
        }
        first = false;
        out.push_back(v);
    }
    if (out.empty()) throw data_error("series csv: no numeric rows in " + path);
    return out;
}

void write_series_csv(const std::string& path, const std::vector<double>& values,
                      const std::string& header) {
    auto f = open_out(path);
    f << header << "\n";
    for (double v : values) f << format_double(v) << "\n";
}

PriceSeries read_prices_csv(const std::string& path) {
    auto f = open_in(path);
    PriceSeries out;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split(t, ',');
        if (fields.size() < 2) throw data_error("prices csv: need date,close rows");
        double close = 0.0;
        if (!parse_double(fields[1], close)) {
            if (first) {
                first = false;
                continue;
            }
            throw data_error("prices csv: unparseable close '" + fields[1] + "'");
        }
        first = false;
        out.dates.push_back(trim(fields[0]));
        out.close.push_back(close);
    }
    if (out.close.empty()) throw data_error("prices csv: no data rows in " + path);
    return out;
}

void write_prices_csv(const std::string& path, const PriceSeries& prices) {
    auto f = open_out(path);
    f << "date,close\n";
    for (std::size_t i = 0; i < prices.close.size(); ++i)
        f << prices.dates[i] << "," << format_double(prices.close[i]) << "\n";
}

void write_cdf_csv(const std::string& path, const CdfEstimate& est) {
    auto f = open_out(path);
    f << "# estimator=" << to_string(est.meta.estimator) << "\n";
    f << "# target=" << to_string(est.meta.target) << "\n";
    f << "# alpha_mode=" << to_string(est.meta.alpha_mode) << "\n";
    f << "# alpha=" << format_double(est.meta.alpha) << "\n";
    f << "# u=" << format_double(est.meta.threshold.level) << "\n";
    if (est.meta.threshold.quantile_used)
        f << "# quantile=" << format_double(*est.meta.threshold.quantile_used) << "\n";
    f << "# n_exceedances=" << est.meta.n_exceedances << "\n";
    if (est.meta.glue_warning) f << "# glue_warning=1\n";
    f << "x,value\n";
    for (std::size_t j = 0; j < est.grid.size(); ++j)
        f << format_double(est.grid[j]) << "," << format_double(est.values[j]) << "\n";
}

CdfEstimate read_cdf_csv(const std::string& path) {
    auto f = open_in(path);
    CdfEstimate est;
    std::string line;
    while (std::getline(f, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto eq = t.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = trim(t.substr(1, eq - 1));
            const std::string val = trim(t.substr(eq + 1));
            if (key == "estimator") est.meta.estimator = estimator_kind_from_string(val);
            else if (key == "target") est.meta.target = target_from_string(val);
            else if (key == "alpha_mode") est.meta.alpha_mode = alpha_mode_from_string(val);
            else if (key == "alpha") parse_double(val, est.meta.alpha);
            else if (key == "u") parse_double(val, est.meta.threshold.level);
            else if (key == "quantile") {
                double q = 0.0;
                if (parse_double(val, q)) est.meta.threshold.quantile_used = q;
            } else if (key == "n_exceedances") {
                est.meta.n_exceedances = static_cast<std::size_t>(std::stoull(val));
            } else if (key == "glue_warning") {
                est.meta.glue_warning = val == "1" || val == "true";
            }
            continue;
        }
        auto fields = split(t, ',');
        if (fields.size() != 2) continue;
        double x = 0.0, v = 0.0;
        if (parse_double(fields[0], x) && parse_double(fields[1], v)) {
            est.grid.push_back(x);
            est.values.push_back(v);
        }
    }
    if (est.grid.empty()) throw data_error("cdf csv: no rows in " + path);
    return est;
}

namespace {

Law parse_law_descriptor(const std::string& desc) {
    const auto open = desc.find('(');
    if (open == std::string::npos || desc.back() != ')')
        throw data_error("spec file: bad law descriptor '" + desc + "'");
    const std::string name = trim(desc.substr(0, open));
    const auto args = split(desc.substr(open + 1, desc.size() - open - 2), ',');
    if (args.size() != 2) throw data_error("spec file: law needs two parameters");
    double a = 0.0, b = 0.0;
    if (!parse_double(args[0], a) || !parse_double(args[1], b))
        throw data_error("spec file: unparseable law parameters in '" + desc + "'");
    if (name == "normal") return NormalLaw{a, b};
    if (name == "lognormal") return LognormalLaw{a, b};
    throw data_error("spec file: unknown law family '" + name + "'");
}

} // namespace

TailChainSpec read_spec_file(const std::string& path) {
    auto f = open_in(path);
    TailChainSpec spec;
    bool have_p = false, have_alpha = false;
    std::string line, section;
    std::vector<double> atoms[2], masses[2];
    bool discrete[2] = {false, false};
    bool law_set[2] = {false, false};
    while (std::getline(f, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            if (section != "a1" && section != "b1")
                throw data_error("spec file: unknown section [" + section + "]");
            continue;
        }
        if (!section.empty()) {
            if (t == "atom,mass") continue;
            auto fields = split(t, ',');
            double atom = 0.0, mass = 0.0;
            if (fields.size() != 2 || !parse_double(fields[0], atom) ||
                !parse_double(fields[1], mass))
                throw data_error("spec file: bad atom row '" + t + "'");
            const int idx = section == "a1" ? 0 : 1;
            atoms[idx].push_back(atom);
            masses[idx].push_back(mass);
            discrete[idx] = true;
            law_set[idx] = true;
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw data_error("spec file: expected key=value, got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key == "p") {
            if (!parse_double(val, spec.p)) throw data_error("spec file: bad p");
            have_p = true;
        } else if (key == "alpha") {
            if (!parse_double(val, spec.alpha)) throw data_error("spec file: bad alpha");
            have_alpha = true;
        } else if (key == "a1_law" || key == "b1_law") {
            const int idx = key == "a1_law" ? 0 : 1;
            if (val != "discrete") {
                (idx == 0 ? spec.a1_law : spec.b1_law) = parse_law_descriptor(val);
                law_set[idx] = true;
            }
        } else {
            throw data_error("spec file: unknown key '" + key + "'");
        }
    }
    if (!have_p || !have_alpha)
        throw data_error("spec file: p and alpha are required");
    for (int idx = 0; idx < 2; ++idx) {
        if (discrete[idx]) {
            Law law = DiscreteLaw::make(atoms[idx], masses[idx]);
            (idx == 0 ? spec.a1_law : spec.b1_law) = std::move(law);
        }
    }
    // A side is required when p > 0, B side when p < 1; a missing immaterial
    // side defaults to a degenerate unit atom
    if (!law_set[0]) {
        if (spec.p > 0.0) throw data_error("spec file: a1 law required when p > 0");
        spec.a1_law = DiscreteLaw::make({1.0}, {1.0});
    }
    if (!law_set[1]) {
        if (spec.p < 1.0) throw data_error("spec file: b1 law required when p < 1");
        spec.b1_law = DiscreteLaw::make({1.0}, {1.0});
    }
    spec.validate();
    return spec;
}

void write_spec_file(const std::string& path, const TailChainSpec& spec) {
    auto f = open_out(path);
    f << "p=" << format_double(spec.p) << "\n";
    f << "alpha=" << format_double(spec.alpha) << "\n";
    auto write_law = [&](const char* key, const char* section, const Law& law) {
        if (is_discrete(law)) {
            f << key << "=discrete\n";
            f << "[" << section << "]\n";
            f << "atom,mass\n";
            const auto& d = as_discrete(law);
            for (std::size_t i = 0; i < d.atoms.size(); ++i)
                f << format_double(d.atoms[i]) << "," << format_double(d.masses[i])
                  << "\n";
        } else if (std::holds_alternative<NormalLaw>(law)) {
            const auto& nl = std::get<NormalLaw>(law);
            f << key << "=normal(" << format_double(nl.mean) << ","
              << format_double(nl.variance) << ")\n";
        } else {
            const auto& ll = std::get<LognormalLaw>(law);
            f << key << "=lognormal(" << format_double(ll.log_mean) << ","
              << format_double(ll.log_sd) << ")\n";
        }
    };
    write_law("a1_law", "a1", spec.a1_law);
    write_law("b1_law", "b1", spec.b1_law);
}

void write_mc_study_csv(const std::string& path, const MCStudyResult& result,
                        Target target) {
    const TargetTable& table = target == Target::A1 ? result.a1 : result.b1;
    auto f = open_out(path);
    f << "# target=" << to_string(target) << "\n";
    f << "# truth=" << result.truth_tag << "\n";
    f << "x,estimator,bias,sd,rmse,rmse_ratio_vs_forward,n_excluded\n";
    const EstimatorCells* cells[3] = {&table.forward, &table.backward, &table.mixture};
    const char* names[3] = {"forward", "backward", "mixture"};
    for (std::size_t j = 0; j < result.grid.size(); ++j) {
        for (int e = 0; e < 3; ++e) {
            f << format_double(result.grid[j]) << "," << names[e] << ","
              << format_double(cells[e]->bias[j]) << ","
              << format_double(cells[e]->sd[j]) << ","
              << format_double(cells[e]->rmse[j]) << ","
              << format_double(cells[e]->rmse_ratio_vs_forward[j]) << ","
              << cells[e]->n_excluded << "\n";
        }
    }
}

void write_mc_summary_csv(const std::string& path, const MCStudyResult& result) {
    auto f = open_out(path);
    f << "stat,bias,sd,rmse\n";
    f << "p_hat," << format_double(result.p_hat.bias) << ","
      << format_double(result.p_hat.sd) << "," << format_double(result.p_hat.rmse)
      << "\n";
    f << "alpha_hat," << format_double(result.alpha_hat.bias) << ","
      << format_double(result.alpha_hat.sd) << ","
      << format_double(result.alpha_hat.rmse) << "\n";
}

void write_metadata(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
    auto f = open_out(path);
    for (const auto& [k, v] : entries) f << k << "=" << v << "\n";
}

} // namespace tailchain
