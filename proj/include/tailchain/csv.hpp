#ifndef TAILCHAIN_CSV_HPP
#define TAILCHAIN_CSV_HPP

#include <string>
#include <vector>

#include "tailchain/estimators.hpp"
#include "tailchain/experiments.hpp"
#include "tailchain/law.hpp"

namespace tailchain {

/// Shortest round-trip decimal form of a double ("%.17g" trimmed); all CSV
/// output goes through this so reruns are byte-identical.
std::string format_double(double v);

/// Single numeric column, optional non-numeric header line.
std::vector<double> read_series_csv(const std::string& path);
void write_series_csv(const std::string& path, const std::vector<double>& values,
                      const std::string& header = "value");

struct PriceSeries {
    std::vector<std::string> dates; // opaque, file order preserved
    std::vector<double> close;
};

/// Two-column date,close file with optional header.
PriceSeries read_prices_csv(const std::string& path);
void write_prices_csv(const std::string& path, const PriceSeries& prices);

/// `# key=value` meta block followed by x,value rows.
void write_cdf_csv(const std::string& path, const CdfEstimate& est);
CdfEstimate read_cdf_csv(const std::string& path);

/// Line-oriented key=value spec file with [a1]/[b1] atom,mass blocks for
/// discrete laws, or a1_law=normal(mean,variance) / lognormal(mu,sigma).
TailChainSpec read_spec_file(const std::string& path);
void write_spec_file(const std::string& path, const TailChainSpec& spec);

void write_mc_study_csv(const std::string& path, const MCStudyResult& result,
                        Target target);
void write_mc_summary_csv(const std::string& path, const MCStudyResult& result);

/// key=value reproducibility sidecar.
void write_metadata(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

} // namespace tailchain

#endif
