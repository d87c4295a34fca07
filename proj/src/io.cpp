#include "polarimeter/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "polarimeter/community.hpp"
#include "polarimeter/errors.hpp"

namespace polarimeter {

namespace {

enum class Separator { tab, comma, whitespace };

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

Separator detect(std::string_view row) {
  if (row.find('\t') != std::string_view::npos) return Separator::tab;
  if (row.find(',') != std::string_view::npos) return Separator::comma;
  return Separator::whitespace;
}

std::vector<std::string_view> split(std::string_view row, Separator sep) {
  std::vector<std::string_view> fields;
  if (sep == Separator::whitespace) {
    std::size_t i = 0;
    while (i < row.size()) {
      while (i < row.size() && (row[i] == ' ' || row[i] == '\t')) ++i;
      if (i == row.size()) break;
      std::size_t j = i;
      while (j < row.size() && row[j] != ' ' && row[j] != '\t') ++j;
      fields.push_back(row.substr(i, j - i));
      i = j;
    }
    return fields;
  }
  const char delim = sep == Separator::tab ? '\t' : ',';
  std::size_t start = 0;
  while (true) {
    const auto pos = row.find(delim, start);
    fields.push_back(trim(row.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

// Calls fn(fields, line_number) for each data row.
template <typename Fn>
void for_each_row(std::istream& in, Fn&& fn) {
  std::optional<Separator> sep;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    if (!sep) sep = detect(row);
    fn(split(row, *sep), line_no);
  }
}

std::optional<double> parse_real(std::string_view s) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<std::uint32_t> parse_index(std::string_view s) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

void read_edges(GraphBuilder& builder, std::istream& in, std::string_view source) {
  const std::string src(source);
  std::size_t rows = 0;
  for_each_row(in, [&](const std::vector<std::string_view>& f, std::size_t line) {
    if (f.size() < 2 || f.size() > 3) throw InputError(src, line, "expected 'u v [w]'");
    if (f[0].empty() || f[1].empty()) throw InputError(src, line, "empty node id");
    double w = 1.0;
    if (f.size() == 3) {
      const auto parsed = parse_real(f[2]);
      if (!parsed) throw InputError(src, line, "weight '" + std::string(f[2]) + "' is not a number");
      w = *parsed;
      if (!(w > 0.0)) throw InputError(src, line, "weight must be positive, got " + std::string(f[2]));
    }
    try {
      builder.add_edge(f[0], f[1], w);
    } catch (const InputError& e) {
      throw InputError(src, line, e.what());
    }
    ++rows;
  });
  if (rows == 0) throw InputError(src + ": edge list is empty");
}

void read_labels(GraphBuilder& builder, std::istream& in, std::string_view source) {
  const std::string src(source);
  std::map<std::string, std::uint32_t> seen;
  for_each_row(in, [&](const std::vector<std::string_view>& f, std::size_t line) {
    if (f.size() != 2) throw InputError(src, line, "expected 'node opinion_index'");
    if (f[0].empty()) throw InputError(src, line, "empty node id");
    const auto idx = parse_index(f[1]);
    if (!idx) throw InputError(src, line, "opinion '" + std::string(f[1]) + "' is not a non-negative integer");
    auto [it, inserted] = seen.emplace(std::string(f[0]), *idx);
    if (!inserted && it->second != *idx) {
      throw InputError(src, line, "conflicting labels for node '" + it->first + "'");
    }
    builder.set_opinion(f[0], Opinion{*idx});
  });
}

std::ifstream open_input(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot open " + p.string());
  return in;
}

}  // namespace

LoadedGraph load_graph(std::istream& edges, std::string_view edge_source, std::istream& labels,
                       std::string_view label_source, std::uint32_t num_opinions) {
  GraphBuilder builder;
  read_edges(builder, edges, edge_source);
  read_labels(builder, labels, label_source);
  try {
    return {builder.build(num_opinions), builder.self_loops_dropped()};
  } catch (const InputError& e) {
    throw InputError(std::string(label_source) + ": " + e.what());
  }
}

LoadedGraph load_graph(const std::filesystem::path& edge_file, const std::filesystem::path& label_file,
                       std::uint32_t num_opinions) {
  auto edges = open_input(edge_file);
  auto labels = open_input(label_file);
  return load_graph(edges, edge_file.string(), labels, label_file.string(), num_opinions);
}

LoadedGraph load_edge_list(std::istream& edges, std::string_view edge_source) {
  GraphBuilder builder;
  read_edges(builder, edges, edge_source);
  return {builder.build_unlabeled(), builder.self_loops_dropped()};
}

LoadedGraph load_edge_list(const std::filesystem::path& edge_file) {
  auto edges = open_input(edge_file);
  return load_edge_list(edges, edge_file.string());
}

void save_edge_list(const LabeledGraph& g, std::ostream& out) {
  char buf[64];
  for (const Edge& e : g.edges()) {
    auto res = std::to_chars(buf, buf + sizeof(buf), e.weight, std::chars_format::general, 17);
    out << g.name(e.u) << '\t' << g.name(e.v) << '\t' << std::string_view(buf, res.ptr - buf) << '\n';
  }
}

void save_labels(const LabeledGraph& g, std::ostream& out) {
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    out << g.name(n) << '\t' << g.opinion(n).value << '\n';
  }
}

void save_partition(const LabeledGraph& g, const Partition& p, std::ostream& out) {
  if (p.size() != g.node_count()) throw InvariantError("partition does not cover the graph");
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    out << g.name(n) << '\t' << p[n] << '\n';
  }
}

}  // namespace polarimeter
