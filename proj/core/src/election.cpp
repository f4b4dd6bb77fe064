#include "hardctl/election.hpp"

#include <algorithm>
#include <sstream>

#include "hardctl/error.hpp"
#include "text_util.hpp"

namespace hardctl {

Election::Election(int num_candidates, std::vector<Vote> votes, std::vector<std::string> names)
    : m_(num_candidates), votes_(std::move(votes)), names_(std::move(names)) {
  if (m_ < 1) throw InvalidInput("an election needs at least one candidate");
  if (!names_.empty() && static_cast<int>(names_.size()) != m_) {
    throw InvalidInput("candidate name list must be empty or have one entry per candidate");
  }
  std::vector<char> seen(m_);
  for (const Vote& v : votes_) {
    if (v.count < 1) throw InvalidInput("vote counts must be positive");
    std::fill(seen.begin(), seen.end(), 0);
    for (Candidate c : v.ranking) {
      if (c < 0 || c >= m_) throw InvalidInput("ranking mentions unknown candidate " + std::to_string(c + 1));
      if (seen[c]) throw InvalidInput("ranking lists candidate " + std::to_string(c + 1) + " twice");
      seen[c] = 1;
    }
    if (!v.partial && static_cast<int>(v.ranking.size()) != m_) {
      throw InvalidInput("complete ranking must list all " + std::to_string(m_) + " candidates");
    }
  }
}

std::string Election::name(Candidate c) const {
  if (!names_.empty()) return names_.at(c);
  return std::to_string(c + 1);
}

int Election::total_voters() const noexcept {
  int n = 0;
  for (const Vote& v : votes_) n += v.count;
  return n;
}

bool Election::has_partial_votes() const noexcept {
  return std::any_of(votes_.begin(), votes_.end(), [](const Vote& v) { return v.partial; });
}

std::vector<Vote> Election::expanded_votes() const {
  std::vector<Vote> out;
  for (const Vote& v : votes_) {
    for (int i = 0; i < v.count; ++i) out.push_back({1, v.ranking, v.partial});
  }
  return out;
}

PairwiseMatrix::PairwiseMatrix(const Election& e) : PairwiseMatrix(e.num_candidates()) {
  for (const Vote& v : e.votes()) {
    const auto& r = v.ranking;
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = i + 1; j < r.size(); ++j) add(r[i], r[j], v.count);
    }
  }
}

Election restrict_election(const Election& e, std::span<const Candidate> kept) {
  if (kept.empty()) throw InvalidInput("restriction must keep at least one candidate");
  std::vector<int> new_id(e.num_candidates(), -1);
  std::vector<Candidate> sorted(kept.begin(), kept.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput("kept candidate set has duplicates");
  }
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= e.num_candidates()) throw InvalidInput("kept candidate out of range");
    new_id[sorted[i]] = static_cast<int>(i);
  }
  std::vector<Vote> votes;
  votes.reserve(e.votes().size());
  for (const Vote& v : e.votes()) {
    Vote nv{v.count, {}, v.partial};
    for (Candidate c : v.ranking) {
      if (new_id[c] >= 0) nv.ranking.push_back(new_id[c]);
    }
    votes.push_back(std::move(nv));
  }
  std::vector<std::string> names;
  if (!e.names().empty()) {
    for (Candidate c : sorted) names.push_back(e.names()[c]);
  }
  return Election(static_cast<int>(sorted.size()), std::move(votes), std::move(names));
}

Vote parse_vote_line(std::string_view line, int line_no) {
  auto colon = line.find(':');
  if (colon == std::string_view::npos) throw ParseError(line_no, "vote line needs 'count: ranking'");
  Vote v;
  long long count = detail::to_int(line.substr(0, colon), line_no);
  if (count < 1) throw ParseError(line_no, "vote count must be positive");
  v.count = static_cast<int>(count);
  std::string_view rest = detail::trim(line.substr(colon + 1));
  if (detail::starts_with(rest, "partial")) {
    v.partial = true;
    rest = detail::trim(rest.substr(7));
  }
  if (!rest.empty()) {
    for (std::string_view tok : detail::split(rest, ',')) {
      long long id = detail::to_int(tok, line_no);
      v.ranking.push_back(static_cast<Candidate>(id - 1));
    }
  }
  return v;
}

std::string format_vote_line(const Vote& v) {
  std::string out = std::to_string(v.count) + ":";
  out += v.partial ? " partial " : " ";
  for (std::size_t i = 0; i < v.ranking.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v.ranking[i] + 1);
  }
  if (v.partial && v.ranking.empty()) out.pop_back();
  return out;
}

Election parse_election(std::string_view text) {
  int m = -1;
  std::vector<std::string> names;
  std::vector<std::pair<int, std::string>> name_lines;
  std::vector<Vote> votes;
  int line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (detail::starts_with(line, "candidates:")) {
      if (m >= 0) throw ParseError(line_no, "duplicate candidates header");
      m = static_cast<int>(detail::to_int(line.substr(11), line_no));
      if (m < 1) throw ParseError(line_no, "candidate count must be positive");
    } else if (detail::starts_with(line, "name:")) {
      std::string_view rest = detail::trim(line.substr(5));
      auto sp = rest.find_first_of(" \t");
      if (sp == std::string_view::npos) throw ParseError(line_no, "name line needs 'name: id label'");
      int id = static_cast<int>(detail::to_int(rest.substr(0, sp), line_no));
      name_lines.emplace_back(id, std::string(detail::trim(rest.substr(sp))));
    } else {
      if (m < 0) throw ParseError(line_no, "vote before candidates header");
      Vote v = parse_vote_line(line, line_no);
      try {
        Election(m, {v});
      } catch (const InvalidInput& err) {
        throw ParseError(line_no, err.what());
      }
      votes.push_back(std::move(v));
    }
  }
  if (m < 0) throw ParseError(line_no, "missing candidates header");
  if (!name_lines.empty()) {
    names.assign(m, "");
    for (auto& [id, label] : name_lines) {
      if (id < 1 || id > m) throw InvalidInput("name for unknown candidate " + std::to_string(id));
      names[id - 1] = label;
    }
    for (int c = 0; c < m; ++c) {
      if (names[c].empty()) names[c] = std::to_string(c + 1);
    }
  }
  return Election(m, std::move(votes), std::move(names));
}

std::string format_election(const Election& e) {
  std::ostringstream out;
  out << "candidates: " << e.num_candidates() << '\n';
  for (std::size_t c = 0; c < e.names().size(); ++c) out << "name: " << c + 1 << ' ' << e.names()[c] << '\n';
  for (const Vote& v : e.votes()) out << format_vote_line(v) << '\n';
  return out.str();
}

}  // namespace hardctl
