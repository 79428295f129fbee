#include "pagesense/phrase_matcher.h"

#include <gtest/gtest.h>

#include <random>

#include "pagesense/text_extraction.h"

namespace pagesense {
namespace {

std::vector<Token> tokens_of(std::string_view text) {
  return segment_and_tokenize(text, "t").tokens;
}

TEST(PhraseMatcherTest, FindsNestedAndOverlappingHits) {
  PhraseMatcher matcher;
  matcher.add({"state", "bank", "of", "india"}, 0);
  matcher.add({"india"}, 1);
  matcher.add({"bank", "of"}, 2);
  const auto hits = matcher.find_all(tokens_of("visited the State Bank of India office"));
  EXPECT_EQ(hits, (std::vector<PhraseHit>{{2, 4, 0}, {3, 2, 2}, {5, 1, 1}}));
}

TEST(PhraseMatcherTest, FirstValueWinsOnRepeatedPhrase) {
  PhraseMatcher matcher;
  matcher.add({"river"}, 4);
  matcher.add({"river"}, 9);
  matcher.add({}, 1);
  EXPECT_EQ(matcher.phrase_count(), 1u);
  EXPECT_EQ(matcher.find_all(tokens_of("river")).front().value, 4u);
}

TEST(PhraseMatcherTest, LongestThenLeftmost) {
  // "a b c": candidates [0,2) "a b" and [1,3) "b c" tie on length.
  std::vector<PhraseHit> hits = {{1, 2, 1}, {0, 2, 0}, {2, 1, 2}};
  EXPECT_EQ(select_longest_leftmost(hits),
            (std::vector<PhraseHit>{{0, 2, 0}, {2, 1, 2}}));
}

TEST(PhraseMatcherTest, EmptyMatcherMatchesNothing) {
  PhraseMatcher matcher;
  EXPECT_TRUE(matcher.empty());
  EXPECT_TRUE(matcher.find_all(tokens_of("anything at all")).empty());
  EXPECT_FALSE(matcher.contains_any(tokens_of("anything")));
}

// Every hit reported by find_all must be a real occurrence and every real
// occurrence must be reported.
TEST(PhraseMatcherTest, AgreesWithNaiveScan) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> vocab = {"a", "b", "c"};
  for (int round = 0; round < 300; ++round) {
    PhraseMatcher matcher;
    std::vector<std::vector<std::string>> phrases;
    for (int p = 0; p < 4; ++p) {
      std::vector<std::string> phrase(1 + rng() % 3);
      for (auto& w : phrase) w = vocab[rng() % vocab.size()];
      bool fresh = std::find(phrases.begin(), phrases.end(), phrase) == phrases.end();
      if (fresh) {
        matcher.add(phrase, static_cast<std::uint32_t>(phrases.size()));
        phrases.push_back(phrase);
      }
    }
    std::string text;
    const std::size_t n = 1 + rng() % 12;
    std::vector<std::string> words(n);
    for (auto& w : words) {
      w = vocab[rng() % vocab.size()];
      text += w + " ";
    }
    std::vector<PhraseHit> expected;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t len = 1; i + len <= n; ++len) {
        std::vector<std::string> window(words.begin() + i, words.begin() + i + len);
        for (std::size_t p = 0; p < phrases.size(); ++p) {
          if (phrases[p] == window) {
            expected.push_back({i, len, static_cast<std::uint32_t>(p)});
          }
        }
      }
    }
    EXPECT_EQ(matcher.find_all(tokens_of(text)), expected) << text;
    EXPECT_EQ(matcher.contains_any(tokens_of(text)), !expected.empty());
  }
}

TEST(PhraseMatcherTest, SelectionIsNonOverlappingAndSorted) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    std::vector<PhraseHit> hits;
    for (int h = 0; h < 8; ++h) {
      hits.push_back({rng() % 10, 1 + rng() % 4, static_cast<std::uint32_t>(h)});
    }
    const auto kept = select_longest_leftmost(hits);
    ASSERT_FALSE(kept.empty());
    for (std::size_t i = 1; i < kept.size(); ++i) {
      EXPECT_LE(kept[i - 1].position + kept[i - 1].length, kept[i].position);
    }
    std::size_t longest = 0;
    for (const auto& hit : hits) longest = std::max(longest, hit.length);
    EXPECT_TRUE(std::any_of(kept.begin(), kept.end(), [&](const PhraseHit& k) {
      return k.length == longest;
    }));
  }
}

}  // namespace
}  // namespace pagesense
