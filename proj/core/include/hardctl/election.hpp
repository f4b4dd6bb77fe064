#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hardctl {

/// Candidates are dense 0-based ids.
using Candidate = int;

/// A (possibly partial) strict ranking, most-preferred first.
using Ranking = std::vector<Candidate>;

/// `count` identical voters casting `ranking`. Partial votes list only some
/// candidates and are meaningful for the Kemeny' rule only.
struct Vote {
  int count = 1;
  Ranking ranking;
  bool partial = false;

  friend bool operator==(const Vote&, const Vote&) = default;
};

/// Candidate set plus a multiset of votes.
///
/// Invariants (checked on construction): complete rankings are permutations
/// of 0..m-1, partial rankings are duplicate-free and in range, counts >= 1.
/// An empty vote list is allowed (voter subsets, arcless McGarvey images).
class Election {
 public:
  Election() = default;
  Election(int num_candidates, std::vector<Vote> votes, std::vector<std::string> names = {});

  int num_candidates() const noexcept { return m_; }
  const std::vector<Vote>& votes() const noexcept { return votes_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  /// Display name: the declared label, or the 1-based id.
  std::string name(Candidate c) const;

  /// Sum of counts.
  int total_voters() const noexcept;
  bool has_partial_votes() const noexcept;

  /// The vote list with every count-k vote expanded to k count-1 votes.
  std::vector<Vote> expanded_votes() const;

  friend bool operator==(const Election&, const Election&) = default;

 private:
  int m_ = 0;
  std::vector<Vote> votes_;
  std::vector<std::string> names_;
};

/// prefers(a, b): voters ranking a above b. For partial votes a pair counts
/// only when both candidates are listed.
class PairwiseMatrix {
 public:
  explicit PairwiseMatrix(const Election& e);
  PairwiseMatrix(int m) : m_(m), data_(static_cast<std::size_t>(m) * m, 0) {}

  int size() const noexcept { return m_; }
  std::int64_t prefers(Candidate a, Candidate b) const { return data_[idx(a, b)]; }
  std::int64_t margin(Candidate a, Candidate b) const { return prefers(a, b) - prefers(b, a); }
  void add(Candidate a, Candidate b, std::int64_t n) { data_[idx(a, b)] += n; }

  friend bool operator==(const PairwiseMatrix&, const PairwiseMatrix&) = default;

 private:
  std::size_t idx(Candidate a, Candidate b) const { return static_cast<std::size_t>(a) * m_ + b; }
  int m_;
  std::vector<std::int64_t> data_;
};

/// Projects every vote onto `kept` (relative order preserved, counts
/// unchanged). Kept candidates are renumbered 0..k-1 in ascending original
/// id order; names follow their candidates. Votes that become empty are kept
/// as empty partial votes only if they were partial; complete votes always
/// stay complete over the kept set.
Election restrict_election(const Election& e, std::span<const Candidate> kept);

/// Election text format:
///   # comment
///   candidates: m
///   name: i label
///   count: c1,c2,...            (1-based ids, complete)
///   count: partial c1,c2,...    (Kemeny' partial vote)
Election parse_election(std::string_view text);
std::string format_election(const Election& e);

/// Vote-line helpers shared by the control-instance format.
Vote parse_vote_line(std::string_view line, int line_no);
std::string format_vote_line(const Vote& v);

}  // namespace hardctl
