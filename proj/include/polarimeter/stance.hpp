#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polarimeter/graph.hpp"

namespace polarimeter {

// Opinion indices used for retweet networks: against = 0, neutral = 1,
// favor = 2.
enum class Stance : std::uint32_t { against = 0, neutral = 1, favor = 2 };

inline constexpr std::uint32_t kStanceOpinions = 3;

std::string_view stance_name(Stance s);
std::optional<Stance> parse_stance(std::string_view name);
inline Opinion to_opinion(Stance s) { return Opinion{static_cast<std::uint32_t>(s)}; }

struct StanceRecord {
  std::string tweet_id;
  std::string author;
  Stance stance = Stance::neutral;
  std::vector<std::string> retweeters;  // one entry per retweet event
};

struct StanceRecordSet {
  std::vector<StanceRecord> records;
};

// JSON lines: {"tweet_id": str, "author": str, "stance": "favor"|"against"|
// "neutral", "retweeters": [str, ...]}. Blank lines are skipped. Malformed
// lines and duplicate tweet ids are InputError with source:line.
StanceRecordSet read_stance_records(std::istream& in, std::string_view source);
StanceRecordSet read_stance_records(const std::filesystem::path& path);

struct UserStanceCounts {
  std::size_t favor = 0;
  std::size_t against = 0;
  std::size_t neutral = 0;

  std::size_t total() const { return favor + against + neutral; }
};

// (F - A) / (F + A + N); 0 when the user has no items.
double stance_score(const UserStanceCounts& c);
// favor if score > 0.2, against if score < -0.2, neutral otherwise.
Stance classify(double score);

struct UserStance {
  UserStanceCounts counts;
  double score = 0.0;
  Stance stance = Stance::neutral;
};

struct UserScores {
  std::map<std::string, UserStance> users;
  std::size_t no_items = 0;  // users labeled neutral because F + A + N = 0
};

// Authors count one item per original tweet; retweeters one item per
// retweet, with the original tweet's stance. Empty ids are ignored.
UserScores score_users(const StanceRecordSet& records);

struct RetweetNetwork {
  LabeledGraph graph;  // 3 opinions, see Stance
  UserScores scores;
  std::size_t retweet_events = 0;         // non-self events that became edge weight
  std::size_t self_retweets_dropped = 0;
  std::size_t empty_retweeters_skipped = 0;
};

// Undirected retweet graph: weight(u, v) counts retweet events between u and
// v in either direction. Authors that were never retweeted stay isolated.
RetweetNetwork build_retweet_network(const StanceRecordSet& records);

// Writes <prefix>.edges.tsv, <prefix>.labels.tsv and <prefix>.opinions.tsv
// (index -> stance name).
void write_network(const RetweetNetwork& net, const std::filesystem::path& prefix);

}  // namespace polarimeter
