#include "pagesense/normalize.h"

#include <gtest/gtest.h>

namespace pagesense {
namespace {

std::vector<std::string> normalized(std::string_view text) {
  std::vector<std::string> out;
  for (const WordSpan& span : split_words(text)) out.push_back(span.normalized);
  return out;
}

TEST(NormalizeTest, CaseFoldsToLowercase) {
  EXPECT_EQ(normalize_word("Bank"), "bank");
  EXPECT_EQ(normalize_word("BANK"), "bank");
  EXPECT_EQ(normalize_word("\xC3\x89" "COLE"), "\xC3\xA9" "cole");  // ÉCOLE
}

TEST(NormalizeTest, ComposesToNfc) {
  // "e" + COMBINING ACUTE ACCENT -> "é"
  EXPECT_EQ(normalize_word("cafe\xCC\x81"), "caf\xC3\xA9");
  EXPECT_EQ(phrase_key("Cafe\xCC\x81 Noir"), phrase_key("caf\xC3\xA9 noir"));
}

TEST(NormalizeTest, CombiningMarkStaysInsideWord) {
  const auto words = split_words("cafe\xCC\x81 au lait");
  ASSERT_EQ(words.size(), 3u);
  EXPECT_EQ(words[0].surface, "cafe\xCC\x81");
  EXPECT_EQ(words[0].normalized, "caf\xC3\xA9");
}

TEST(NormalizeTest, HyphensAndApostrophesSplitTokens) {
  EXPECT_EQ(normalized("river-side don't"),
            (std::vector<std::string>{"river", "side", "don", "t"}));
  EXPECT_EQ(normalized("river\xE2\x80\x99s"),  // right single quote
            (std::vector<std::string>{"river", "s"}));
}

TEST(NormalizeTest, DigitsAreTokenCharacters) {
  EXPECT_EQ(normalized("UBS, VTB and 24x7 ATMs"),
            (std::vector<std::string>{"ubs", "vtb", "and", "24x7", "atms"}));
}

TEST(NormalizeTest, SpansPointIntoInput) {
  const std::string text = "  Reserve Bank!";
  const auto words = split_words(text);
  ASSERT_EQ(words.size(), 2u);
  EXPECT_EQ(text.substr(words[1].begin, words[1].end - words[1].begin),
            "Bank");
}

TEST(NormalizeTest, NonBreakingSpaceSeparates) {
  EXPECT_EQ(normalized("State\xC2\xA0" "Bank"),
            (std::vector<std::string>{"state", "bank"}));
}

TEST(NormalizeTest, SanitizeReplacesInvalidUtf8) {
  EXPECT_EQ(sanitize_utf8("ok\xFFok"), "ok\xEF\xBF\xBDok");
  EXPECT_EQ(sanitize_utf8("\xC3"), "\xEF\xBF\xBD");  // truncated sequence
  EXPECT_EQ(sanitize_utf8("plain"), "plain");
  EXPECT_EQ(sanitize_utf8("\xE0\xA4\x95"), "\xE0\xA4\x95");  // Devanagari KA
}

TEST(NormalizeTest, PunctuationOnlyPhraseIsEmpty) {
  EXPECT_TRUE(normalize_phrase(" -- '' ").empty());
  EXPECT_EQ(phrase_key("  State   Bank of INDIA "), "state bank of india");
}

}  // namespace
}  // namespace pagesense
