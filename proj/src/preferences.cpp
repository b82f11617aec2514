#include "psc/preferences.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace psc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_token_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

// ---------------------------------------------------------------------------
// Universe

Universe::Universe(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("universe must contain at least one alternative");
  if (names_.size() > kMaxAlternatives) {
    throw std::invalid_argument("universe larger than " + std::to_string(kMaxAlternatives) + " alternatives");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty() || !std::all_of(n.begin(), n.end(), is_token_char)) {
      throw std::invalid_argument("invalid alternative name '" + n + "'");
    }
    if (!index_.emplace(n, static_cast<AltIndex>(i)).second) {
      throw std::invalid_argument("duplicate alternative '" + n + "'");
    }
  }
}

std::optional<AltIndex> Universe::find(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AltIndex Universe::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw std::invalid_argument("unknown alternative '" + std::string(name) + "'");
}

UniversePtr make_universe(std::vector<std::string> names) {
  return std::make_shared<const Universe>(std::move(names));
}

UniversePtr parse_universe(std::string_view comma_list) {
  std::vector<std::string> names;
  for (auto part : split(comma_list, ',')) names.emplace_back(trim(part));
  return make_universe(std::move(names));
}

bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// AlternativeSet

std::vector<AltIndex> AlternativeSet::members() const {
  std::vector<AltIndex> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (auto bits = bits_; bits != 0; bits &= bits - 1) out.push_back(std::countr_zero(bits));
  return out;
}

std::string format_set(const Universe& universe, AlternativeSet set) {
  std::string out = "{";
  bool first = true;
  for (AltIndex x : set.members()) {
    if (!first) out += ", ";
    out += universe.name(x);
    first = false;
  }
  return out + "}";
}

AlternativeSet parse_set(const Universe& universe, std::string_view comma_list) {
  comma_list = trim(comma_list);
  if (!comma_list.empty() && comma_list.front() == '{' && comma_list.back() == '}') {
    comma_list = trim(comma_list.substr(1, comma_list.size() - 2));
  }
  AlternativeSet out;
  if (comma_list.empty()) return out;
  for (auto part : split(comma_list, ',')) out.insert(universe.index_of(trim(part)));
  return out;
}

// ---------------------------------------------------------------------------
// PreferenceRelation

PreferenceRelation::PreferenceRelation(UniversePtr universe, std::vector<AlternativeSet> classes)
    : universe_(std::move(universe)), classes_(std::move(classes)) {
  if (!universe_) throw std::invalid_argument("preference relation without a universe");
  const auto m = universe_->size();
  const auto all = AlternativeSet::full(m);
  rank_.assign(m, -1);
  AlternativeSet seen;
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    const auto cls = classes_[k];
    if (cls.empty()) throw std::invalid_argument("empty indifference class");
    if (!cls.subset_of(all)) throw std::invalid_argument("indifference class outside the universe");
    if (!(cls & seen).empty()) throw std::invalid_argument("indifference classes overlap");
    seen = seen | cls;
    for (AltIndex x : cls.members()) rank_[static_cast<std::size_t>(x)] = static_cast<int>(k);
  }
  if (seen != all) throw std::invalid_argument("indifference classes do not cover the universe");
}

PreferenceRelation PreferenceRelation::total_indifference(UniversePtr universe) {
  const auto m = universe->size();
  return PreferenceRelation(std::move(universe), {AlternativeSet::full(m)});
}

AlternativeSet PreferenceRelation::upper_contour(AltIndex x) const {
  AlternativeSet out;
  for (int k = 0; k <= rank(x); ++k) out = out | classes_[static_cast<std::size_t>(k)];
  return out;
}

PreferenceRelation parse_relation(std::string_view text, const UniversePtr& universe) {
  std::vector<AlternativeSet> classes(1);
  AlternativeSet seen;
  std::size_t i = 0;
  bool expect_token = true;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (expect_token) {
      if (!is_token_char(c)) throw ParseError(std::string("expected alternative, found '") + c + "'", i);
      const auto start = i;
      while (i < text.size() && is_token_char(text[i])) ++i;
      const auto token = text.substr(start, i - start);
      const auto x = universe->find(token);
      if (!x) throw ParseError("unknown alternative '" + std::string(token) + "'", start);
      if (seen.contains(*x)) throw ParseError("duplicate alternative '" + std::string(token) + "'", start);
      seen.insert(*x);
      classes.back().insert(*x);
      expect_token = false;
    } else {
      if (c == '>') {
        classes.emplace_back();
      } else if (c != '~') {
        throw ParseError(std::string("expected '>' or '~', found '") + c + "'", i);
      }
      ++i;
      expect_token = true;
    }
  }
  if (expect_token) throw ParseError("relation ends without an alternative", text.size());
  const auto missing = AlternativeSet::full(universe->size()) - seen;
  if (!missing.empty()) {
    throw ParseError("missing alternative '" + universe->name(missing.first()) + "'", text.size());
  }
  return PreferenceRelation(universe, std::move(classes));
}

std::string format_relation(const PreferenceRelation& rel) {
  std::string out;
  const auto& u = *rel.universe();
  for (std::size_t k = 0; k < rel.class_count(); ++k) {
    if (k > 0) out += " > ";
    bool first = true;
    for (AltIndex x : rel.classes()[k].members()) {
      if (!first) out += '~';
      out += u.name(x);
      first = false;
    }
  }
  return out;
}

AlternativeSet max_set(const PreferenceRelation& rel, AlternativeSet subset) {
  if (subset.empty()) throw std::invalid_argument("max_set of an empty set");
  for (const auto cls : rel.classes()) {
    const auto hit = cls & subset;
    if (!hit.empty()) return hit;
  }
  throw std::invalid_argument("max_set: subset outside the universe");
}

std::optional<AltIndex> unique_top(const PreferenceRelation& rel) {
  const auto top = rel.classes().front();
  if (top.size() != 1) return std::nullopt;
  return top.first();
}

bool is_strict(const PreferenceRelation& rel) {
  return rel.class_count() == rel.universe()->size();
}

std::vector<PreferenceRelation> enumerate_weak_orders(const UniversePtr& universe) {
  std::vector<PreferenceRelation> out;
  std::vector<AlternativeSet> prefix;

  // Classes of the remaining elements in lexicographic order of their sorted
  // member lists: depth-first extension of the current class.
  std::function<void(AlternativeSet)> place = [&](AlternativeSet remaining) {
    if (remaining.empty()) {
      out.emplace_back(universe, prefix);
      return;
    }
    const auto members = remaining.members();
    std::function<void(std::size_t, AlternativeSet)> grow = [&](std::size_t start, AlternativeSet cls) {
      for (std::size_t j = start; j < members.size(); ++j) {
        auto next = cls;
        next.insert(members[j]);
        prefix.push_back(next);
        place(remaining - next);
        prefix.pop_back();
        grow(j + 1, next);
      }
    };
    grow(0, AlternativeSet{});
  };
  place(AlternativeSet::full(universe->size()));
  return out;
}

// ---------------------------------------------------------------------------
// Profile

Profile::Profile(UniversePtr universe, std::vector<Entry> entries)
    : universe_(std::move(universe)), entries_(std::move(entries)) {
  if (!universe_) throw std::invalid_argument("profile without a universe");
  std::set<AgentId> ids;
  for (const auto& e : entries_) {
    if (e.agent <= 0) throw std::invalid_argument("agent ids must be positive");
    if (!ids.insert(e.agent).second) {
      throw std::invalid_argument("duplicate agent id " + std::to_string(e.agent));
    }
    if (!same_universe(e.relation.universe(), universe_)) {
      throw std::invalid_argument("agent " + std::to_string(e.agent) + " uses a different universe");
    }
  }
}

std::vector<AgentId> Profile::agents() const {
  std::vector<AgentId> ids;
  ids.reserve(entries_.size());
  for (const auto& e : entries_) ids.push_back(e.agent);
  return ids;
}

bool Profile::has_agent(AgentId agent) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.agent == agent; });
}

const PreferenceRelation& Profile::relation_of(AgentId agent) const {
  for (const auto& e : entries_) {
    if (e.agent == agent) return e.relation;
  }
  throw std::invalid_argument("no agent " + std::to_string(agent) + " in profile");
}

Profile Profile::without(AgentId agent) const {
  if (!has_agent(agent)) throw std::invalid_argument("no agent " + std::to_string(agent) + " in profile");
  std::vector<Entry> rest;
  for (const auto& e : entries_) {
    if (e.agent != agent) rest.push_back(e);
  }
  return Profile(universe_, std::move(rest));
}

Profile Profile::with_relation(AgentId agent, PreferenceRelation relation) const {
  auto copy = entries_;
  bool found = false;
  for (auto& e : copy) {
    if (e.agent == agent) {
      e.relation = relation;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("no agent " + std::to_string(agent) + " in profile");
  return Profile(universe_, std::move(copy));
}

namespace {

struct ProfileLine {
  std::size_t line_no;
  AgentId agent;
  std::string relation;
};

struct ScannedProfile {
  std::optional<std::vector<std::string>> header;
  std::vector<ProfileLine> lines;
};

ScannedProfile scan_profile(std::string_view text) {
  ScannedProfile out;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'agent <id>: <relation>'", line_no);
    const auto head = trim(line.substr(0, colon));
    const auto body = trim(line.substr(colon + 1));

    if (head == "alternatives") {
      if (out.header || !out.lines.empty()) throw ParseError("misplaced alternatives header", line_no);
      std::vector<std::string> names;
      for (auto part : split(body, ',')) names.emplace_back(trim(part));
      out.header = std::move(names);
      continue;
    }
    if (head.substr(0, 5) != "agent") throw ParseError("expected 'agent <id>: <relation>'", line_no);
    const auto id_text = trim(head.substr(5));
    if (id_text.empty() || !std::all_of(id_text.begin(), id_text.end(),
                                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw ParseError("malformed agent id '" + std::string(id_text) + "'", line_no);
    }
    out.lines.push_back({line_no, std::stoi(std::string(id_text)), std::string(body)});
  }
  return out;
}

Profile build_profile(const ScannedProfile& scanned, const UniversePtr& universe) {
  std::vector<Profile::Entry> entries;
  std::set<AgentId> ids;
  for (const auto& l : scanned.lines) {
    if (l.agent <= 0) throw ParseError("agent ids must be positive", l.line_no);
    if (!ids.insert(l.agent).second) throw ParseError("duplicate agent " + std::to_string(l.agent), l.line_no);
    try {
      entries.push_back({l.agent, parse_relation(l.relation, universe)});
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(l.line_no) + ": " + e.what(), l.line_no);
    }
  }
  return Profile(universe, std::move(entries));
}

}  // namespace

Profile parse_profile(std::string_view text) {
  const auto scanned = scan_profile(text);
  UniversePtr universe;
  if (scanned.header) {
    universe = make_universe(*scanned.header);
  } else {
    std::set<std::string> tokens;
    for (const auto& l : scanned.lines) {
      std::size_t i = 0;
      const auto& r = l.relation;
      while (i < r.size()) {
        if (!is_token_char(r[i])) {
          ++i;
          continue;
        }
        const auto start = i;
        while (i < r.size() && is_token_char(r[i])) ++i;
        tokens.emplace(r.substr(start, i - start));
      }
    }
    if (tokens.empty()) throw ParseError("profile names no alternatives", 0);
    universe = make_universe({tokens.begin(), tokens.end()});
  }
  return build_profile(scanned, universe);
}

Profile parse_profile(std::string_view text, const UniversePtr& universe) {
  const auto scanned = scan_profile(text);
  if (scanned.header && !(*make_universe(*scanned.header) == *universe)) {
    throw ParseError("alternatives header does not match the expected universe", 0);
  }
  return build_profile(scanned, universe);
}

std::string format_profile(const Profile& profile) {
  std::string out;
  const auto& names = profile.universe()->names();
  if (!std::is_sorted(names.begin(), names.end())) {
    out += "alternatives: ";
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
    out += '\n';
  }
  for (const auto& e : profile.entries()) {
    out += "agent " + std::to_string(e.agent) + ": " + format_relation(e.relation) + '\n';
  }
  return out;
}

Profile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_profile(buffer.str());
}

// ---------------------------------------------------------------------------
// Permutations

namespace {

// Parses "(x y z)(u v)" or "(x,y,z)"; returns the cycles as token lists.
std::vector<std::vector<std::string>> parse_cycles(std::string_view text) {
  std::vector<std::vector<std::string>> cycles;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation", i);
    const auto close = text.find(')', i);
    if (close == std::string_view::npos) throw ParseError("unterminated cycle", i);
    std::vector<std::string> cycle;
    auto body = text.substr(i + 1, close - i - 1);
    std::string token;
    for (char c : body) {
      if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
        if (!token.empty()) cycle.push_back(std::exchange(token, {}));
      } else {
        token += c;
      }
    }
    if (!token.empty()) cycle.push_back(token);
    cycles.push_back(std::move(cycle));
    i = close + 1;
  }
  return cycles;
}

template <typename Key>
std::string cycles_text(const std::map<Key, Key>& mapping, const std::function<std::string(Key)>& name) {
  std::string out;
  std::set<Key> done;
  for (const auto& [start, image] : mapping) {
    if (done.count(start) || image == start) continue;
    out += '(';
    Key cur = start;
    bool first = true;
    do {
      if (!first) out += ' ';
      out += name(cur);
      done.insert(cur);
      cur = mapping.at(cur);
      first = false;
    } while (cur != start);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace

AgentPermutation::AgentPermutation(std::map<AgentId, AgentId> mapping) : mapping_(std::move(mapping)) {
  std::set<AgentId> images;
  for (const auto& [from, to] : mapping_) {
    if (!mapping_.count(to) || !images.insert(to).second) {
      throw std::invalid_argument("agent permutation is not a bijection");
    }
  }
}

AgentPermutation AgentPermutation::identity(std::span<const AgentId> agents) {
  std::map<AgentId, AgentId> m;
  for (auto a : agents) m[a] = a;
  return AgentPermutation(std::move(m));
}

AgentPermutation AgentPermutation::parse(std::string_view cycles, std::span<const AgentId> agents) {
  std::map<AgentId, AgentId> m;
  for (auto a : agents) m[a] = a;
  std::set<AgentId> used;
  for (const auto& cycle : parse_cycles(cycles)) {
    std::vector<AgentId> ids;
    for (const auto& tok : cycle) {
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw ParseError("malformed agent id '" + tok + "' in permutation", 0);
      }
      const AgentId id = std::stoi(tok);
      if (!m.count(id)) throw std::invalid_argument("permutation names unknown agent " + tok);
      if (!used.insert(id).second) throw std::invalid_argument("agent " + tok + " appears twice in permutation");
      ids.push_back(id);
    }
    for (std::size_t k = 0; k < ids.size(); ++k) m[ids[k]] = ids[(k + 1) % ids.size()];
  }
  return AgentPermutation(std::move(m));
}

AgentId AgentPermutation::operator()(AgentId agent) const {
  const auto it = mapping_.find(agent);
  if (it == mapping_.end()) throw std::invalid_argument("permutation undefined on agent " + std::to_string(agent));
  return it->second;
}

AgentPermutation AgentPermutation::inverse() const {
  std::map<AgentId, AgentId> inv;
  for (const auto& [from, to] : mapping_) inv[to] = from;
  return AgentPermutation(std::move(inv));
}

std::string AgentPermutation::to_cycles() const {
  return cycles_text<AgentId>(mapping_, [](AgentId a) { return std::to_string(a); });
}

AlternativePermutation::AlternativePermutation(UniversePtr universe, std::vector<AltIndex> image)
    : universe_(std::move(universe)), image_(std::move(image)) {
  const auto m = universe_->size();
  if (image_.size() != m) throw std::invalid_argument("alternative permutation has wrong size");
  std::vector<bool> hit(m, false);
  for (auto y : image_) {
    if (y < 0 || static_cast<std::size_t>(y) >= m || hit[static_cast<std::size_t>(y)]) {
      throw std::invalid_argument("alternative permutation is not a bijection");
    }
    hit[static_cast<std::size_t>(y)] = true;
  }
}

AlternativePermutation AlternativePermutation::identity(UniversePtr universe) {
  std::vector<AltIndex> image(universe->size());
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = static_cast<AltIndex>(i);
  return AlternativePermutation(std::move(universe), std::move(image));
}

AlternativePermutation AlternativePermutation::parse(std::string_view cycles, UniversePtr universe) {
  auto image = identity(universe).image_;
  std::set<AltIndex> used;
  for (const auto& cycle : parse_cycles(cycles)) {
    std::vector<AltIndex> xs;
    for (const auto& tok : cycle) {
      const auto x = universe->index_of(tok);
      if (!used.insert(x).second) throw std::invalid_argument("alternative " + tok + " appears twice in permutation");
      xs.push_back(x);
    }
    for (std::size_t k = 0; k < xs.size(); ++k) image[static_cast<std::size_t>(xs[k])] = xs[(k + 1) % xs.size()];
  }
  return AlternativePermutation(std::move(universe), std::move(image));
}

AlternativeSet AlternativePermutation::operator()(AlternativeSet set) const {
  AlternativeSet out;
  for (auto x : set.members()) out.insert((*this)(x));
  return out;
}

AlternativePermutation AlternativePermutation::inverse() const {
  std::vector<AltIndex> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[static_cast<std::size_t>(image_[i])] = static_cast<AltIndex>(i);
  return AlternativePermutation(universe_, std::move(inv));
}

std::string AlternativePermutation::to_cycles() const {
  std::map<AltIndex, AltIndex> m;
  for (std::size_t i = 0; i < image_.size(); ++i) m[static_cast<AltIndex>(i)] = image_[i];
  return cycles_text<AltIndex>(m, [this](AltIndex x) { return universe_->name(x); });
}

PreferenceRelation permute_alternatives(const PreferenceRelation& rel, const AlternativePermutation& sigma) {
  if (!same_universe(rel.universe(), sigma.universe())) {
    throw std::invalid_argument("permutation defined on a different universe");
  }
  std::vector<AlternativeSet> classes;
  classes.reserve(rel.class_count());
  for (const auto cls : rel.classes()) classes.push_back(sigma(cls));
  return PreferenceRelation(rel.universe(), std::move(classes));
}

Profile permute_alternatives(const Profile& profile, const AlternativePermutation& sigma) {
  std::vector<Profile::Entry> entries;
  for (const auto& e : profile.entries()) entries.push_back({e.agent, permute_alternatives(e.relation, sigma)});
  return Profile(profile.universe(), std::move(entries));
}

Profile permute_agents(const Profile& profile, const AgentPermutation& pi) {
  if (pi.mapping().size() != profile.size()) {
    throw std::invalid_argument("agent permutation is not a bijection on the profile's agents");
  }
  std::vector<Profile::Entry> entries;
  for (const auto& e : profile.entries()) {
    if (!pi.mapping().count(e.agent)) {
      throw std::invalid_argument("agent permutation undefined on agent " + std::to_string(e.agent));
    }
    entries.push_back({e.agent, profile.relation_of(pi(e.agent))});
  }
  return Profile(profile.universe(), std::move(entries));
}

bool pareto_dominates(const Profile& profile, AltIndex x, AltIndex y) {
  bool strict = false;
  for (const auto& e : profile.entries()) {
    if (!e.relation.weakly_prefers(x, y)) return false;
    strict = strict || e.relation.strictly_prefers(x, y);
  }
  return strict;
}

}  // namespace psc
