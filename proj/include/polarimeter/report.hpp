#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace polarimeter {

// Scores of one community-detection run.
struct RunScore {
  std::uint64_t seed = 0;
  double p_within = 0.0;
  double p_between = 0.0;
  double polarization = 0.0;
  double within_mass = 0.0;   // total scaled weight on within-community edges
  double between_mass = 0.0;  // total scaled weight on between-community edges
  std::size_t communities = 0;
  double modularity = 0.0;
};

struct Summary {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single value
  double min = 0.0;
  double max = 0.0;
};

// Pairwise summation for the mean, so results depend only on value order.
Summary summarize(std::span<const double> values);

struct PolarizationReport {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::uint32_t num_opinions = 0;
  std::uint64_t seed = 0;
  std::vector<RunScore> runs;  // in run-index order

  Summary p_within() const;
  Summary p_between() const;
  Summary polarization() const;
  Summary communities() const;
};

enum class ReportFormat { json, csv };

ReportFormat parse_report_format(std::string_view name);

// Byte-stable: fixed key order, reals with six decimals.
void save_report(const PolarizationReport& report, std::ostream& out, ReportFormat format);
void save_report(const PolarizationReport& report, const std::filesystem::path& path, ReportFormat format);

}  // namespace polarimeter
