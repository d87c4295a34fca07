#include "polarimeter/stance.hpp"

#include <fstream>
#include <istream>
#include <set>

#include <json.hpp>

#include "polarimeter/errors.hpp"
#include "polarimeter/io.hpp"

namespace polarimeter {

std::string_view stance_name(Stance s) {
  switch (s) {
    case Stance::against:
      return "against";
    case Stance::neutral:
      return "neutral";
    case Stance::favor:
      return "favor";
  }
  return "neutral";
}

std::optional<Stance> parse_stance(std::string_view name) {
  if (name == "favor") return Stance::favor;
  if (name == "against") return Stance::against;
  if (name == "neutral") return Stance::neutral;
  return std::nullopt;
}

StanceRecordSet read_stance_records(std::istream& in, std::string_view source) {
  const std::string src(source);
  StanceRecordSet set;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(src, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InputError(src, line_no, "record must be a JSON object");

    const auto string_field = [&](const char* key) {
      auto it = j.find(key);
      if (it == j.end() || !it->is_string()) {
        throw InputError(src, line_no, std::string("missing string field '") + key + "'");
      }
      return it->get<std::string>();
    };

    StanceRecord rec;
    rec.tweet_id = string_field("tweet_id");
    rec.author = string_field("author");
    if (rec.author.empty()) throw InputError(src, line_no, "empty author id");
    const std::string stance = string_field("stance");
    const auto parsed = parse_stance(stance);
    if (!parsed) throw InputError(src, line_no, "unknown stance '" + stance + "'");
    rec.stance = *parsed;

    auto rts = j.find("retweeters");
    if (rts != j.end()) {
      if (!rts->is_array()) throw InputError(src, line_no, "'retweeters' must be an array");
      for (const auto& r : *rts) {
        if (!r.is_string()) throw InputError(src, line_no, "retweeter ids must be strings");
        rec.retweeters.push_back(r.get<std::string>());
      }
    }
    if (!ids.insert(rec.tweet_id).second) {
      throw InputError(src, line_no, "duplicate tweet_id '" + rec.tweet_id + "'");
    }
    set.records.push_back(std::move(rec));
  }
  return set;
}

StanceRecordSet read_stance_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_stance_records(in, path.string());
}

double stance_score(const UserStanceCounts& c) {
  if (c.total() == 0) return 0.0;
  return (static_cast<double>(c.favor) - static_cast<double>(c.against)) / static_cast<double>(c.total());
}

Stance classify(double score) {
  if (score > 0.2) return Stance::favor;
  if (score < -0.2) return Stance::against;
  return Stance::neutral;
}

namespace {

void count_item(UserStanceCounts& c, Stance s) {
  switch (s) {
    case Stance::favor:
      ++c.favor;
      break;
    case Stance::against:
      ++c.against;
      break;
    case Stance::neutral:
      ++c.neutral;
      break;
  }
}

}  // namespace

UserScores score_users(const StanceRecordSet& records) {
  std::map<std::string, UserStanceCounts> counts;
  for (const StanceRecord& r : records.records) {
    count_item(counts[r.author], r.stance);
    for (const std::string& who : r.retweeters) {
      if (!who.empty()) count_item(counts[who], r.stance);
    }
  }
  UserScores out;
  for (auto& [user, c] : counts) {
    UserStance us{c, stance_score(c), Stance::neutral};
    if (c.total() == 0) {
      ++out.no_items;
    } else {
      us.stance = classify(us.score);
    }
    out.users.emplace(user, us);
  }
  return out;
}

RetweetNetwork build_retweet_network(const StanceRecordSet& records) {
  RetweetNetwork net;
  GraphBuilder builder;
  for (const StanceRecord& r : records.records) {
    builder.add_node(r.author);
    for (const std::string& who : r.retweeters) {
      if (who.empty()) {
        ++net.empty_retweeters_skipped;
        continue;
      }
      if (who == r.author) {
        ++net.self_retweets_dropped;
        builder.add_node(who);
        continue;
      }
      builder.add_edge(who, r.author, 1.0);
      ++net.retweet_events;
    }
  }
  net.scores = score_users(records);
  for (const auto& [user, us] : net.scores.users) builder.set_opinion(user, to_opinion(us.stance));
  net.graph = builder.build(kStanceOpinions);
  return net;
}

void write_network(const RetweetNetwork& net, const std::filesystem::path& prefix) {
  const auto open = [&](const char* suffix) {
    std::filesystem::path p = prefix;
    p += suffix;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError("cannot write " + p.string());
    return out;
  };
  {
    auto out = open(".edges.tsv");
    save_edge_list(net.graph, out);
  }
  {
    auto out = open(".labels.tsv");
    save_labels(net.graph, out);
  }
  {
    auto out = open(".opinions.tsv");
    for (std::uint32_t i = 0; i < kStanceOpinions; ++i) {
      out << i << '\t' << stance_name(static_cast<Stance>(i)) << '\n';
    }
  }
}

}  // namespace polarimeter
