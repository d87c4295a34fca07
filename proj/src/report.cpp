#include "polarimeter/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "polarimeter/errors.hpp"

namespace polarimeter {

namespace {

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

std::string fixed6(double x) {
  char buf[64];
  // Avoid "-0.000000" for tiny negative rounding residue.
  if (std::fabs(x) < 5e-7) x = 0.0;
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

template <typename Field>
Summary summarize_field(const std::vector<RunScore>& runs, Field field) {
  std::vector<double> values;
  values.reserve(runs.size());
  for (const RunScore& r : runs) values.push_back(static_cast<double>(field(r)));
  return summarize(values);
}

void write_json(const PolarizationReport& r, std::ostream& out) {
  const Summary pw = r.p_within();
  const Summary pb = r.p_between();
  const Summary p = r.polarization();
  const Summary k = r.communities();
  out << "{\n";
  out << "  \"graph\": {\"nodes\": " << r.nodes << ", \"edges\": " << r.edges << "},\n";
  out << "  \"num_opinions\": " << r.num_opinions << ",\n";
  out << "  \"runs\": " << r.runs.size() << ",\n";
  out << "  \"seed\": " << r.seed << ",\n";
  out << "  \"p_within\": {\"mean\": " << fixed6(pw.mean) << ", \"std\": " << fixed6(pw.std) << "},\n";
  out << "  \"p_between\": {\"mean\": " << fixed6(pb.mean) << ", \"std\": " << fixed6(pb.std) << "},\n";
  out << "  \"polarization\": {\"mean\": " << fixed6(p.mean) << ", \"std\": " << fixed6(p.std)
      << ", \"min\": " << fixed6(p.min) << ", \"max\": " << fixed6(p.max) << "},\n";
  out << "  \"communities\": {\"mean\": " << fixed6(k.mean) << "},\n";
  out << "  \"per_run\": [";
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    const RunScore& s = r.runs[i];
    out << (i == 0 ? "\n" : ",\n");
    out << "    {\"run\": " << i << ", \"seed\": " << s.seed << ", \"p_within\": " << fixed6(s.p_within)
        << ", \"p_between\": " << fixed6(s.p_between) << ", \"polarization\": " << fixed6(s.polarization)
        << ", \"communities\": " << s.communities << ", \"modularity\": " << fixed6(s.modularity) << "}";
  }
  out << (r.runs.empty() ? "]\n" : "\n  ]\n");
  out << "}\n";
}

void write_csv(const PolarizationReport& r, std::ostream& out) {
  out << "run,seed,p_within,p_between,polarization,communities,modularity\n";
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    const RunScore& s = r.runs[i];
    out << i << ',' << s.seed << ',' << fixed6(s.p_within) << ',' << fixed6(s.p_between) << ','
        << fixed6(s.polarization) << ',' << s.communities << ',' << fixed6(s.modularity) << '\n';
  }
}

}  // namespace

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = pairwise_sum(values) / n;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  if (values.size() > 1) {
    std::vector<double> sq;
    sq.reserve(values.size());
    for (double x : values) sq.push_back((x - s.mean) * (x - s.mean));
    s.std = std::sqrt(pairwise_sum(sq) / (n - 1.0));
  }
  return s;
}

Summary PolarizationReport::p_within() const {
  return summarize_field(runs, [](const RunScore& r) { return r.p_within; });
}
Summary PolarizationReport::p_between() const {
  return summarize_field(runs, [](const RunScore& r) { return r.p_between; });
}
Summary PolarizationReport::polarization() const {
  return summarize_field(runs, [](const RunScore& r) { return r.polarization; });
}
Summary PolarizationReport::communities() const {
  return summarize_field(runs, [](const RunScore& r) { return r.communities; });
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw InputError("unknown report format '" + std::string(name) + "' (expected json or csv)");
}

void save_report(const PolarizationReport& report, std::ostream& out, ReportFormat format) {
  if (format == ReportFormat::json) {
    write_json(report, out);
  } else {
    write_csv(report, out);
  }
}

void save_report(const PolarizationReport& report, const std::filesystem::path& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  save_report(report, out, format);
  if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace polarimeter
