#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>

#include "lgk/graph_io.hpp"
#include "lgk/partition.hpp"
#include "support.hpp"

namespace {

using lgk::LabelledGraph;
using lgk::VertexSet;

LabelledGraph even_shift() {
  return lgk::load_graph(LGK_SAMPLES_DIR "/even_shift.graph");
}

std::set<std::string> words(LabelledGraph const& g, std::set<lgk::Word> const& ws) {
  std::set<std::string> out;
  for (auto const& w : ws) out.insert(lgk::word_to_string(g, w));
  return out;
}

TEST(LambdaSet, EvenShift) {
  auto g = even_shift();
  auto a = *g.vertex_index("A");
  auto b = *g.vertex_index("B");
  EXPECT_EQ(words(g, lgk::lambda_set(g, b, 1)), (std::set<std::string>{"0"}));
  // Paths of length 2 into A: A-1->A-1->A, A-0->B-0->A, B-0->A-1->A.
  EXPECT_EQ(words(g, lgk::lambda_set(g, a, 2)),
            (std::set<std::string>{"0", "1", "00", "01", "11"}));
}

TEST(LambdaSet, SourceReceivesNothing) {
  auto g = lgk::parse_graph(R"({"edges": [["s","a","t"], ["t","b","t"]]})");
  EXPECT_TRUE(lgk::lambda_set(g, *g.vertex_index("s"), 3).empty());
}

TEST(LambdaSet, ResourceGuard) {
  auto g = lgk::load_graph(LGK_SAMPLES_DIR "/o2.graph");
  EXPECT_THROW(lgk::lambda_set(g, 0, 30), lgk::ResourceError);
  EXPECT_EQ(lgk::lambda_set(g, 0, 3).size(), 2u + 4u + 8u);
}

TEST(WordToString, DotsForLongLabels) {
  auto g = lgk::parse_graph(R"({"edges": [["v","ab","v"], ["v","c","v"]]})");
  EXPECT_EQ(lgk::word_to_string(g, {0, 1}), "ab.c");
  EXPECT_EQ(lgk::word_to_string(even_shift(), {0, 1}), "01");
}

TEST(RefineTower, EvenShiftStabilizesAtOne) {
  auto g = even_shift();
  auto t = lgk::refine_tower(g, 32);
  ASSERT_TRUE(t.stabilized_at);
  EXPECT_EQ(*t.stabilized_at, 1u);
  EXPECT_EQ(t.horizon(), 2u);
  for (std::size_t l = 1; l <= 10; ++l) EXPECT_EQ(t.at(l).size(), 2u);
  EXPECT_EQ(t.at(7).classes[0], g.vertex_set({"A"}));
}

TEST(RefineTower, MergesEqualIncomingLabels) {
  auto g = lgk::parse_graph(R"({"edges": [["x","a","y"], ["x","a","z"], ["y","b","x"],
                                           ["z","c","x"], ["x","d","x"]]})");
  auto t = lgk::refine_tower(g, 8);
  EXPECT_EQ(t.at(1).class_of[*g.vertex_index("y")], t.at(1).class_of[*g.vertex_index("z")]);
  EXPECT_EQ(t.at(1).size(), 2u);
}

TEST(RefineTower, RejectsUnreadyGraphs) {
  auto bad = lgk::load_graph(LGK_SAMPLES_DIR "/not_left_resolving.graph");
  try {
    lgk::refine_tower(bad, 4);
    FAIL();
  } catch (lgk::PreconditionError const& e) {
    EXPECT_NE(std::string(e.what()).find("left_resolving: (2, a)"), std::string::npos);
  }
  EXPECT_THROW(lgk::refine_tower(lgk::parse_graph(R"({"edges": [["s","a","t"], ["t","b","t"]]})")),
               lgk::PreconditionError);
  EXPECT_THROW(lgk::refine_tower(even_shift(), 0), lgk::PreconditionError);
}

TEST(RefineTower, HorizonCap) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = test::random_left_resolving(rng, 8, 2, 0.5);
    auto full = lgk::refine_tower(g, 64);
    ASSERT_TRUE(full.stabilized_at);
    auto cut = lgk::refine_tower(g, 1);
    EXPECT_EQ(cut.horizon(), 1u);
    EXPECT_TRUE(cut.at(1).same_classes(full.at(1)));
    if (*full.stabilized_at > 1) {
      EXPECT_FALSE(cut.stabilized_at);
      EXPECT_THROW(cut.at(2), lgk::PreconditionError);
    }
  }
}

TEST(ClassRelativeRange, EvenShift) {
  auto g = even_shift();
  auto t = lgk::refine_tower(g);
  auto zero = *g.label_index("0");
  auto one = *g.label_index("1");
  // Classes: 0 = {A}, 1 = {B}.
  EXPECT_EQ(lgk::class_relative_range(g, t, 1, 0, zero), (std::vector<std::size_t>{1}));
  EXPECT_EQ(lgk::class_relative_range(g, t, 1, 1, zero), (std::vector<std::size_t>{0}));
  EXPECT_TRUE(lgk::class_relative_range(g, t, 1, 1, one).empty());
}

TEST(DumpTower, Text) {
  auto g = even_shift();
  EXPECT_EQ(lgk::dump_tower_text(g, lgk::refine_tower(g)),
            "level 1: {A}\nlevel 1: {B}\nlevel 2: {A}\nlevel 2: {B}\nstabilized_at: 1\n");
}

// Equal classes at level l exactly when Lambda_l agrees.
TEST(PartitionProperties, LambdaOracle) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t const n = 1 + trial % 8;
    auto g = test::random_left_resolving(rng, n, 2 + trial % 2, 0.4);
    auto t = lgk::refine_tower(g, 4);
    for (std::size_t l = 1; l <= 4; ++l) {
      if (l > t.horizon() && !t.stabilized_at) break;
      std::vector<std::set<lgk::Word>> lam;
      for (std::size_t v = 0; v < n; ++v) lam.push_back(lgk::lambda_set(g, v, l));
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w = 0; w < n; ++w) {
          EXPECT_EQ(t.at(l).class_of[v] == t.at(l).class_of[w], lam[v] == lam[w])
              << "level " << l << " vertices " << v << ", " << w;
        }
      }
    }
  }
}

TEST(PartitionProperties, RefinementAndRanges) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t const n = 1 + trial % 9;
    auto g = test::random_left_resolving(rng, n, 3, 0.35);
    auto t = lgk::refine_tower(g);
    ASSERT_TRUE(t.stabilized_at);
    EXPECT_LE(*t.stabilized_at, n);
    for (std::size_t l = 1; l <= t.horizon(); ++l) {
      auto const& p = t.at(l);
      VertexSet cover;
      for (std::size_t c = 0; c < p.size(); ++c) {
        EXPECT_FALSE(p.classes[c].empty());
        EXPECT_FALSE(cover.intersects(p.classes[c]));
        cover = cover | p.classes[c];
        if (c) EXPECT_LT(p.classes[c - 1].members().front(), p.classes[c].members().front());
        for (auto v : p.classes[c]) EXPECT_EQ(p.class_of[v], c);
      }
      EXPECT_EQ(cover, g.all_vertices());
      auto const& next = t.at(l + 1);
      for (std::size_t d = 0; d < next.size(); ++d) {
        EXPECT_TRUE(next.classes[d].is_subset_of(p.classes[p.class_of[next.classes[d].members().front()]]));
      }
      for (std::size_t c = 0; c < p.size(); ++c) {
        for (std::size_t a = 0; a < g.label_count(); ++a) {
          auto ds = lgk::class_relative_range(g, t, l, c, a);
          VertexSet u;
          for (auto d : ds) u = u | next.classes[d];
          EXPECT_EQ(u, lgk::relative_range(g, p.classes[c], a));
          EXPECT_TRUE(std::adjacent_find(ds.begin(), ds.end()) == ds.end());
        }
      }
    }
    for (std::size_t l = *t.stabilized_at; l <= *t.stabilized_at + 3; ++l) {
      EXPECT_TRUE(t.at(l).same_classes(t.at(*t.stabilized_at)));
    }
  }
}

}  // namespace
