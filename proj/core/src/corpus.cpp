#include "renn/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "renn/errors.hpp"
#include "renn/rng.hpp"

namespace renn {

void RelationMention::validate() const {
  auto fail = [this](const std::string& what) {
    throw ValidationError("mention " + id + ": " + what);
  };
  std::size_t n = tokens.size();
  if (n == 0) fail("no tokens");
  if (head1 >= n) fail("head1 out of range");
  if (head2 >= n) fail("head2 out of range");
  if (head1 == head2) fail("head1 equals head2");
  if (entity_types.size() != n) fail("entity_types length mismatch");
  if (chunks.size() != n) fail("chunks length mismatch");
  for (const DepEdge& e : dep_edges) {
    if (e.gov >= n || e.dep >= n) fail("dep edge index out of range");
  }
}

std::string to_string(ViewKind kind) {
  return kind == ViewKind::kSeq ? "seq" : "dep";
}

ViewKind view_kind_from_string(const std::string& s) {
  if (s == "seq" || s == "SEQ") return ViewKind::kSeq;
  if (s == "dep" || s == "DEP") return ViewKind::kDep;
  throw ConfigError("unknown view kind: " + s);
}

LabelSpace LabelSpace::from_corpus(const std::vector<RelationMention>& corpus,
                                   const std::string& negative_label) {
  if (corpus.empty()) throw ConfigError("cannot derive labels: empty corpus");
  std::set<std::string> seen;
  for (const auto& m : corpus) seen.insert(m.gold_class);
  LabelSpace out;
  out.classes.assign(seen.begin(), seen.end());
  if (!negative_label.empty()) {
    auto it = std::find(out.classes.begin(), out.classes.end(), negative_label);
    if (it != out.classes.end()) {
      out.negative_class = static_cast<std::size_t>(it - out.classes.begin());
    }
  }
  return out;
}

std::size_t LabelSpace::index_of(const std::string& label) const {
  auto it = std::find(classes.begin(), classes.end(), label);
  if (it == classes.end()) {
    throw ValidationError("label not in label space: " + label);
  }
  return static_cast<std::size_t>(it - classes.begin());
}

namespace {

using nlohmann::json;

RelationMention mention_from_json(const json& j, std::size_t line_no) {
  auto parse_fail = [line_no](const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
  };
  if (!j.is_object()) parse_fail("record is not a JSON object");

  static const std::set<std::string> known = {
      "id",     "tokens", "head1",     "head2", "entity_types",
      "chunks", "dep_edges", "label", "domain"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) parse_fail("unknown key '" + it.key() + "'");
  }
  for (const char* key : {"id", "tokens", "head1", "head2", "entity_types",
                          "chunks", "dep_edges", "label"}) {
    if (!j.contains(key)) {
      parse_fail("missing key '" + std::string(key) + "'");
    }
  }

  RelationMention m;
  try {
    m.id = j.at("id").get<std::string>();
    m.tokens = j.at("tokens").get<std::vector<std::string>>();
    m.head1 = j.at("head1").get<std::size_t>();
    m.head2 = j.at("head2").get<std::size_t>();
    m.entity_types = j.at("entity_types").get<std::vector<std::string>>();
    m.chunks = j.at("chunks").get<std::vector<std::string>>();
    m.gold_class = j.at("label").get<std::string>();
    if (j.contains("domain")) m.domain = j.at("domain").get<std::string>();
    for (const auto& e : j.at("dep_edges")) {
      if (!e.is_array() || e.size() != 3) {
        parse_fail("dep_edges entry is not a [gov, dep, label] triple");
      }
      DepEdge edge;
      edge.gov = e.at(0).get<std::size_t>();
      edge.dep = e.at(1).get<std::size_t>();
      edge.label = e.at(2).get<std::string>();
      m.dep_edges.push_back(std::move(edge));
    }
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
  m.validate();
  return m;
}

}  // namespace

std::vector<RelationMention> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus: " + path);
  std::vector<RelationMention> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(mention_from_json(j, line_no));
  }
  return out;
}

std::string corpus_line(const RelationMention& m) {
  json j;
  j["id"] = m.id;
  j["tokens"] = m.tokens;
  j["head1"] = m.head1;
  j["head2"] = m.head2;
  j["entity_types"] = m.entity_types;
  j["chunks"] = m.chunks;
  json edges = json::array();
  for (const DepEdge& e : m.dep_edges) {
    edges.push_back(json::array({e.gov, e.dep, e.label}));
  }
  j["dep_edges"] = std::move(edges);
  j["label"] = m.gold_class;
  if (!m.domain.empty()) j["domain"] = m.domain;
  return j.dump();
}

void save_corpus(const std::string& path,
                 const std::vector<RelationMention>& mentions) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write corpus: " + path);
  for (const auto& m : mentions) out << corpus_line(m) << "\n";
  if (!out) throw IoError("short write on corpus: " + path);
}

namespace {

/// Undirected adjacency with parallel edges deduplicated and self-loops
/// dropped. neighbors[i] is sorted ascending.
std::vector<std::vector<std::size_t>> adjacency(const RelationMention& m) {
  std::vector<std::set<std::size_t>> nb(m.length());
  for (const DepEdge& e : m.dep_edges) {
    if (e.gov == e.dep) continue;
    nb[e.gov].insert(e.dep);
    nb[e.dep].insert(e.gov);
  }
  std::vector<std::vector<std::size_t>> out(m.length());
  for (std::size_t i = 0; i < nb.size(); ++i) {
    out[i].assign(nb[i].begin(), nb[i].end());
  }
  return out;
}

constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);

std::vector<std::size_t> bfs_distances(
    const std::vector<std::vector<std::size_t>>& nb, std::size_t source) {
  std::vector<std::size_t> dist(nb.size(), kUnreached);
  std::queue<std::size_t> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : nb[u]) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

/// Lexicographically smallest shortest path from head1 to head2, as a
/// sequence of positions. Greedy descent over BFS distances from head2:
/// every shortest path steps the remaining distance down by one, so taking
/// the smallest qualifying neighbor at each step is lexicographically
/// minimal. Empty when disconnected.
std::vector<std::size_t> shortest_path(const RelationMention& m) {
  auto nb = adjacency(m);
  auto dist = bfs_distances(nb, m.head2);
  if (dist[m.head1] == kUnreached) return {};
  std::vector<std::size_t> path{m.head1};
  std::size_t cur = m.head1;
  while (cur != m.head2) {
    std::size_t next = kUnreached;
    for (std::size_t v : nb[cur]) {
      if (dist[v] + 1 == dist[cur]) {
        next = v;
        break;  // neighbors sorted ascending
      }
    }
    path.push_back(next);
    cur = next;
  }
  return path;
}

}  // namespace

std::vector<std::size_t> dependency_path(const RelationMention& m) {
  std::vector<std::size_t> path = shortest_path(m);
  std::sort(path.begin(), path.end());
  return path;
}

std::vector<std::size_t> dependency_path_ordered(const RelationMention& m) {
  return shortest_path(m);
}

SentenceView build_view(const RelationMention& m, ViewKind kind) {
  SentenceView view;
  view.kind = kind;
  if (kind == ViewKind::kSeq) {
    view.indices.resize(m.length());
    for (std::size_t i = 0; i < m.length(); ++i) view.indices[i] = i;
    view.view_head1 = m.head1;
    view.view_head2 = m.head2;
    return view;
  }
  view.indices = dependency_path(m);
  if (view.indices.empty()) {
    throw NoPathError("mention " + m.id +
                      ": heads are disconnected in the dependency graph");
  }
  auto pos = [&](std::size_t original) {
    auto it = std::lower_bound(view.indices.begin(), view.indices.end(),
                               original);
    return static_cast<std::size_t>(it - view.indices.begin());
  };
  view.view_head1 = pos(m.head1);
  view.view_head2 = pos(m.head2);
  return view;
}

namespace {

const char* kEntityCycle[] = {"PER", "ORG", "GPE", "LOC"};
const char* kChunkCycle[] = {"B-NP", "I-NP", "B-VP", "B-PP"};
const char* kDepLabelCycle[] = {"nsubj", "dobj", "prep", "amod", "nmod"};

std::string synth_word(std::size_t i) { return "w" + std::to_string(i); }

/// True when tokens[from..] start with the trigger k-gram of any class.
bool matches_any_trigger(const std::vector<std::string>& tokens,
                         std::size_t from, const SynthSpec& spec) {
  for (std::size_t c = 0; c < spec.classes; ++c) {
    bool all = true;
    for (std::size_t j = 0; j < spec.pattern_length; ++j) {
      if (from + j >= tokens.size() ||
          tokens[from + j] != synth_word(c * spec.pattern_length + j)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

std::vector<RelationMention> generate_synthetic(const SynthSpec& spec) {
  if (spec.classes < 2) {
    throw ConfigError("synthetic corpus needs at least 2 classes");
  }
  if (spec.size < 1) throw ConfigError("synthetic corpus needs size >= 1");
  if (spec.pattern_length < 1) {
    throw ConfigError("synthetic trigger length must be >= 1");
  }
  std::size_t trigger_words = spec.classes * spec.pattern_length;
  if (spec.vocab < trigger_words) {
    throw ConfigError(
        "vocabulary too small: " + std::to_string(spec.vocab) + " words for " +
        std::to_string(spec.classes) + " classes of length " +
        std::to_string(spec.pattern_length) + " triggers");
  }

  Rng rng(spec.seed);
  // Fillers avoid trigger words when possible so no accidental trigger can
  // relabel a mention; a rejection check below guards the degenerate case.
  std::size_t filler_lo = trigger_words < spec.vocab ? trigger_words : 0;
  auto filler = [&]() {
    return synth_word(filler_lo + rng.uniform_index(spec.vocab - filler_lo));
  };

  std::vector<RelationMention> out;
  out.reserve(spec.size);
  std::size_t positives = 0;
  for (std::size_t m = 0; m < spec.size; ++m) {
    bool negative = spec.negative_fraction > 0.0 &&
                    rng.bernoulli(spec.negative_fraction);
    std::size_t cls = negative ? 0 : positives++ % spec.classes;

    RelationMention mention;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1000) {
        throw ConfigError(
            "vocabulary too small to produce unambiguous filler text");
      }
      std::vector<std::string> tokens;
      std::size_t affix = std::max<std::size_t>(1, spec.affix_span);
      std::size_t fill = std::max<std::size_t>(1, spec.filler_span);
      std::size_t prefix = rng.uniform_index(affix);
      std::size_t mid1 = rng.uniform_index(fill);
      std::size_t mid2 = rng.uniform_index(fill);
      std::size_t suffix = rng.uniform_index(affix);
      for (std::size_t i = 0; i < prefix; ++i) tokens.push_back(filler());
      std::size_t h1 = tokens.size();
      tokens.push_back(filler());
      for (std::size_t i = 0; i < mid1; ++i) tokens.push_back(filler());
      if (!negative) {
        for (std::size_t j = 0; j < spec.pattern_length; ++j) {
          tokens.push_back(synth_word(cls * spec.pattern_length + j));
        }
      } else {
        // keep the length distribution comparable to positives
        for (std::size_t j = 0; j < spec.pattern_length; ++j) {
          tokens.push_back(filler());
        }
      }
      for (std::size_t i = 0; i < mid2; ++i) tokens.push_back(filler());
      std::size_t h2 = tokens.size();
      tokens.push_back(filler());
      for (std::size_t i = 0; i < suffix; ++i) tokens.push_back(filler());

      // The label must be decidable from the trigger alone: reject drafts
      // whose filler text spells a trigger anywhere else in the sentence.
      std::size_t trigger_at = h1 + 1 + mid1;
      bool ambiguous = false;
      for (std::size_t from = 0; from < tokens.size(); ++from) {
        if (!negative && from == trigger_at) continue;
        if (matches_any_trigger(tokens, from, spec)) {
          ambiguous = true;
          break;
        }
      }
      if (ambiguous) continue;

      mention.tokens = std::move(tokens);
      mention.head1 = h1;
      mention.head2 = h2;
      break;
    }

    std::size_t len = mention.length();
    mention.id = "synth-" + std::to_string(m);
    mention.gold_class = negative ? kNegativeLabel : "R" + std::to_string(cls);
    mention.entity_types.assign(len, "O");
    mention.entity_types[mention.head1] = kEntityCycle[m % 4];
    mention.entity_types[mention.head2] = kEntityCycle[(m + 1) % 4];
    mention.chunks.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
      mention.chunks[i] = kChunkCycle[i % 4];
    }
    // Random tree whose head1..head2 path is the between-heads span: chain
    // the span, then attach the remaining tokens at random points.
    std::vector<std::size_t> in_tree;
    for (std::size_t i = mention.head1; i <= mention.head2; ++i) {
      if (i > mention.head1) {
        mention.dep_edges.push_back(
            {i - 1, i, kDepLabelCycle[rng.uniform_index(5)]});
      }
      in_tree.push_back(i);
    }
    for (std::size_t i = 0; i < len; ++i) {
      if (i >= mention.head1 && i <= mention.head2) continue;
      std::size_t parent = in_tree[rng.uniform_index(in_tree.size())];
      mention.dep_edges.push_back(
          {parent, i, kDepLabelCycle[rng.uniform_index(5)]});
      in_tree.push_back(i);
    }
    if (!spec.domains.empty()) {
      mention.domain = spec.domains[m % spec.domains.size()];
    }
    mention.validate();
    out.push_back(std::move(mention));
  }
  return out;
}

}  // namespace renn
