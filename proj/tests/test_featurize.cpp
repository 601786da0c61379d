#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "renn/errors.hpp"
#include "renn/featurize.hpp"
#include "test_helpers.hpp"

using namespace renn;
using renn::testing::make_mention;
using renn::testing::words;

namespace {

struct Fixture {
  ModelParameters mp;
  std::vector<RelationMention> corpus;
  TableConfig cfg;

  Fixture() {
    RelationMention m = make_mention(
        words(5), 1, 3,
        {{1, 2, "nsubj"}, {2, 3, "dobj"}, {0, 1, "amod"}, {3, 4, "amod"}});
    m.entity_types[1] = "PER";
    m.entity_types[3] = "GPE";
    corpus.push_back(m);
    cfg.word_dim = 4;
    cfg.dist_dim = 2;
    cfg.label_dim = 2;
    cfg.max_len = 8;
  }

  EmbeddingTables tables() {
    Rng rng(1);
    return EmbeddingTables(mp, "tables", cfg, corpus, nullptr, rng);
  }
};

}  // namespace

TEST_CASE("column dimensionality formula") {
  CHECK(input_column_dim(300, 50, 50, 3) == 504);
  CHECK(input_column_dim(4, 2, 2, 0) == 13);
  CHECK(input_column_dim(0, 0, 0, 0) == 1);
}

TEST_CASE("tables report the formula dimensionality") {
  Fixture fx;
  EmbeddingTables tables = fx.tables();
  // corpus has 3 distinct dep labels
  CHECK(tables.relation_count() == 3);
  CHECK(tables.column_dim() == input_column_dim(4, 2, 2, 3));
}

TEST_CASE("distance component at a head equals the zero-delta row") {
  Fixture fx;
  EmbeddingTables tables = fx.tables();
  SentenceView view = build_view(fx.corpus[0], ViewKind::kSeq);
  InputMatrix x = featurize(fx.corpus[0], view, tables, 8);
  std::size_t h = x.head1;
  std::size_t zero_row = tables.distance_row(0);
  const Parameter& d = tables.distance_table();
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(x.columns[h][4 + j] == d.value.at(zero_row, j));
  }
  // and the second distance block at head2 matches as well
  std::size_t h2 = x.head2;
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(x.columns[h2][4 + 2 + j] == d.value.at(zero_row, j));
  }
}

TEST_CASE("trailing columns are PAD columns with zero tails") {
  Fixture fx;
  EmbeddingTables tables = fx.tables();
  RelationMention m = make_mention({"a", "b"}, 0, 1, {{0, 1, "nsubj"}});
  SentenceView view = build_view(m, ViewKind::kSeq);
  InputMatrix x = featurize(m, view, tables, 4);
  CHECK(x.length == 4);
  CHECK(x.real_length == 2);
  for (std::size_t i = 2; i < 4; ++i) {
    CHECK(x.sources[i].pad);
    CHECK(x.sources[i].word_row == EmbeddingTables::kPadRow);
    CHECK(x.sources[i].dist1_row == tables.distance_pad_row());
    for (double v : x.tails[i]) CHECK(v == 0.0);
  }
  for (std::size_t i = 0; i < 2; ++i) CHECK_FALSE(x.sources[i].pad);
}

TEST_CASE("incident-edge bits follow the relation label set") {
  Fixture fx;
  EmbeddingTables tables = fx.tables();
  // token 2 touches edges nsubj (1-2) and dobj (2-3) but no amod
  SentenceView view = build_view(fx.corpus[0], ViewKind::kSeq);
  InputMatrix x = featurize(fx.corpus[0], view, tables, 8);
  std::size_t base = 4 + 2 + 2 + 2 + 2;  // word + 2 dist + ent + chunk
  int amod = tables.relation_bit("amod");
  int dobj = tables.relation_bit("dobj");
  int nsubj = tables.relation_bit("nsubj");
  REQUIRE(amod >= 0);
  REQUIRE(dobj >= 0);
  REQUIRE(nsubj >= 0);
  const Column& col2 = x.columns[2];
  CHECK(col2[base + 1 + nsubj] == 1.0);
  CHECK(col2[base + 1 + dobj] == 1.0);
  CHECK(col2[base + 1 + amod] == 0.0);
}

TEST_CASE("on-path bit marks exactly the dependency path tokens") {
  Fixture fx;
  EmbeddingTables tables = fx.tables();
  SentenceView view = build_view(fx.corpus[0], ViewKind::kSeq);
  InputMatrix x = featurize(fx.corpus[0], view, tables, 8);
  std::size_t p_index = 4 + 2 + 2 + 2 + 2;
  // path between heads 1 and 3 is 1-2-3
  std::vector<double> expect = {0, 1, 1, 1, 0};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(x.columns[i][p_index] == expect[i]);
  }
}

TEST_CASE("g bit sum equals distinct (token,label) incidences") {
  Fixture fx;
  EmbeddingTables tables = fx.tables();
  SynthSpec spec;
  spec.size = 30;
  spec.seed = 77;
  for (const auto& m : generate_synthetic(spec)) {
    SentenceView view = build_view(m, ViewKind::kSeq);
    ModelParameters mp;
    Rng rng(3);
    TableConfig cfg = fx.cfg;
    cfg.max_len = 32;
    EmbeddingTables t(mp, "t", cfg, {m}, nullptr, rng);
    InputMatrix x = featurize(m, view, t, m.length());
    std::size_t base = input_column_dim(cfg.word_dim, cfg.dist_dim,
                                        cfg.label_dim, 0);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.real_length; ++i) {
      for (std::size_t r = 0; r < t.relation_count(); ++r) {
        sum += x.columns[i][base + r];
      }
    }
    std::set<std::pair<std::size_t, std::string>> incidences;
    for (const DepEdge& e : m.dep_edges) {
      incidences.insert({e.gov, e.label});
      incidences.insert({e.dep, e.label});
    }
    CHECK(sum == static_cast<double>(incidences.size()));
  }
}

TEST_CASE("featurize is deterministic") {
  Fixture fx;
  EmbeddingTables tables = fx.tables();
  SentenceView view = build_view(fx.corpus[0], ViewKind::kSeq);
  InputMatrix a = featurize(fx.corpus[0], view, tables, 8);
  InputMatrix b = featurize(fx.corpus[0], view, tables, 8);
  CHECK(a.columns == b.columns);
  CHECK(a.tails == b.tails);
}

TEST_CASE("view longer than n is a length error") {
  Fixture fx;
  EmbeddingTables tables = fx.tables();
  SentenceView view = build_view(fx.corpus[0], ViewKind::kSeq);
  CHECK_THROWS_AS(featurize(fx.corpus[0], view, tables, 3), DimensionError);
}

TEST_CASE("unknown words and labels fall back to the UNK row when frozen") {
  Fixture fx;
  EmbeddingTables tables = fx.tables();
  tables.freeze();
  RelationMention m = make_mention({"brandnew", "t1"}, 0, 1, {});
  m.entity_types[0] = "NEWTYPE";
  SentenceView view = build_view(m, ViewKind::kSeq);
  InputMatrix x = featurize(m, view, tables, 4);
  CHECK(x.sources[0].word_row == EmbeddingTables::kUnkRow);
  CHECK(x.sources[0].entity_row == EmbeddingTables::kUnkRow);
  CHECK(x.sources[1].word_row == tables.word_row("t1"));
}

TEST_CASE("unfrozen tables grow entity and chunk rows") {
  ModelParameters mp;
  Fixture fx;
  Rng rng(1);
  EmbeddingTables tables(mp, "t", fx.cfg, fx.corpus, nullptr, rng);
  std::size_t before = tables.entity_table().value.rows();
  RelationMention m = make_mention({"t0", "t1"}, 0, 1, {});
  m.entity_types[0] = "NEWTYPE";
  Rng growth(2);
  SentenceView view = build_view(m, ViewKind::kSeq);
  InputMatrix x = featurize(m, view, tables, 4, growth);
  CHECK(tables.entity_table().value.rows() == before + 1);
  CHECK(x.sources[0].entity_row == before);
  tables.freeze();
  RelationMention m2 = make_mention({"t0", "t1"}, 0, 1, {});
  m2.entity_types[0] = "NEWER";
  InputMatrix y = featurize(m2, build_view(m2, ViewKind::kSeq), tables, 4);
  CHECK(y.sources[0].entity_row == EmbeddingTables::kUnkRow);
}

TEST_CASE("permuting distance rows with the row map leaves features fixed") {
  Fixture fx;
  EmbeddingTables tables = fx.tables();
  SentenceView view = build_view(fx.corpus[0], ViewKind::kSeq);
  InputMatrix before = featurize(fx.corpus[0], view, tables, 8);
  std::size_t rows = tables.distance_table().value.rows();
  std::vector<std::size_t> perm(rows);
  for (std::size_t i = 0; i < rows; ++i) perm[i] = (i + 3) % rows;
  tables.permute_distance_rows(perm);
  InputMatrix after = featurize(fx.corpus[0], view, tables, 8);
  CHECK(before.columns == after.columns);
}

TEST_CASE("pretrained vectors are copied for known words") {
  std::string path = "/tmp/renn_test_vec.txt";
  {
    std::ofstream out(path);
    out << "3 4\n";
    out << "t1 0.1 0.2 0.3 0.4\n";
    out << "t3 -1 -2 -3 -4\n";
    out << "zzz 9 9 9 9\n";
  }
  PretrainedEmbeddings pre = PretrainedEmbeddings::load(path);
  CHECK(pre.dim == 4);
  CHECK(pre.vectors.size() == 3);

  Fixture fx;
  ModelParameters mp;
  Rng rng(1);
  EmbeddingTables tables(mp, "t", fx.cfg, fx.corpus, &pre, rng);
  std::size_t row = tables.word_row("t1");
  CHECK(tables.word_table().value.at(row, 0) == 0.1);
  CHECK(tables.word_table().value.at(row, 3) == 0.4);
  std::size_t row3 = tables.word_row("t3");
  CHECK(tables.word_table().value.at(row3, 1) == -2.0);
  // t0 is not in the file: random init, not a copy of anything
  std::remove(path.c_str());
}

TEST_CASE("word2vec loader without header infers the dimension") {
  std::string path = "/tmp/renn_test_vec2.txt";
  {
    std::ofstream out(path);
    out << "alpha 1 2\n";
    out << "beta 3 4\n";
  }
  PretrainedEmbeddings pre = PretrainedEmbeddings::load(path);
  CHECK(pre.dim == 2);
  CHECK(pre.vectors.at("alpha")[1] == 2.0);
  std::remove(path.c_str());
}

TEST_CASE("graph columns equal realized columns") {
  Fixture fx;
  EmbeddingTables tables = fx.tables();
  SentenceView view = build_view(fx.corpus[0], ViewKind::kSeq);
  InputMatrix x = featurize(fx.corpus[0], view, tables, 8);
  Tape tape;
  std::vector<Value> cols = input_columns(tape, tables, x);
  REQUIRE(cols.size() == x.length);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const Tensor& v = tape.value(cols[i]);
    REQUIRE(v.size() == x.dim);
    for (std::size_t j = 0; j < x.dim; ++j) {
      CHECK(v[j] == x.columns[i][j]);
    }
  }
}

TEST_CASE("every column matches the dimensionality formula") {
  SynthSpec spec;
  spec.size = 25;
  spec.seed = 88;
  std::vector<RelationMention> corpus = generate_synthetic(spec);
  ModelParameters mp;
  TableConfig cfg;
  cfg.word_dim = 5;
  cfg.dist_dim = 3;
  cfg.label_dim = 2;
  cfg.max_len = 32;
  Rng rng(4);
  EmbeddingTables tables(mp, "t", cfg, corpus, nullptr, rng);
  for (const auto& m : corpus) {
    for (ViewKind kind : {ViewKind::kSeq, ViewKind::kDep}) {
      SentenceView view = build_view(m, kind);
      InputMatrix x = featurize(m, view, tables, 32);
      CHECK(x.dim == tables.column_dim());
      for (const Column& col : x.columns) CHECK(col.size() == x.dim);
      for (const Column& tail : x.tails) {
        CHECK(tail[0] == (tail[0] == 0.0 ? 0.0 : 1.0));  // p bit binary
        for (std::size_t r = 1; r < tail.size(); ++r) {
          CHECK((tail[r] == 0.0 || tail[r] == 1.0));
        }
      }
    }
  }
}

TEST_CASE("padding beyond the distance-table range is rejected") {
  Fixture fx;
  EmbeddingTables tables = fx.tables();  // max_len 8
  RelationMention m = make_mention({"a", "b"}, 0, 1, {});
  SentenceView view = build_view(m, ViewKind::kSeq);
  CHECK_THROWS_AS(featurize(m, view, tables, 9), DimensionError);
}
