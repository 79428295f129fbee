#ifndef PAGESENSE_TEXT_EXTRACTION_H_
#define PAGESENSE_TEXT_EXTRACTION_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "pagesense/document.h"

namespace pagesense {

struct ExtractionOptions {
  // Keep <title> text and description/keywords <meta> content. Off by
  // default: page meaning comes from body content.
  bool include_title = false;
};

// Best-effort HTML to plain text. Script, style and comment content is
// dropped, tags are stripped, entities decoded, and every block-level
// boundary becomes a '\n'. Whitespace runs collapse to one space and blank
// lines are removed. Never throws.
std::string html_to_text(std::string_view html,
                         const ExtractionOptions& options = {});

// Splits text into sentences and tokens. A sentence ends at '\n' or at
// '.', '!' or '?' followed by whitespace or end of input; sentences without
// tokens are dropped. Invalid UTF-8 is replaced, never fatal.
Document segment_and_tokenize(std::string_view text, std::string page_id);

// True for the page extensions a corpus may contain (.html, .htm, .txt).
bool is_page_file(const std::filesystem::path& path);

// Reads a page file and builds its Document: .html/.htm are extracted,
// anything else is taken verbatim. Throws IoError when unreadable.
Document load_page(const std::filesystem::path& path, std::string page_id,
                   const ExtractionOptions& options = {});

}  // namespace pagesense

#endif  // PAGESENSE_TEXT_EXTRACTION_H_
