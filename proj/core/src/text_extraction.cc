#include "pagesense/text_extraction.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "pagesense/error.h"
#include "pagesense/normalize.h"

namespace pagesense {
namespace {

constexpr std::string_view kNbsp = "\xC2\xA0";

// Elements whose start and end both terminate a sentence.
constexpr std::array<std::string_view, 36> kBlockElements = {
    "address", "article", "aside",  "blockquote", "body",   "br",
    "caption", "dd",      "div",    "dl",         "dt",     "fieldset",
    "figcaption", "figure", "footer", "form",     "h1",     "h2",
    "h3",      "h4",      "h5",     "h6",         "header", "hr",
    "html",    "li",      "main",   "nav",        "ol",     "p",
    "pre",     "section", "table",  "td",         "th",     "tr"};

bool is_block_element(std::string_view name) {
  return name == "ul" || name == "head" ||
         std::find(kBlockElements.begin(), kBlockElements.end(), name) !=
             kBlockElements.end();
}

char ascii_lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool istarts_with(std::string_view text, std::size_t at,
                  std::string_view prefix) {
  if (text.size() - at < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (ascii_lower(text[at + i]) != prefix[i]) return false;
  }
  return true;
}

// Position of the first case-insensitive `needle` at or after `from`, or
// npos.
std::size_t ifind(std::string_view text, std::string_view needle,
                  std::size_t from) {
  for (std::size_t i = from; i + needle.size() <= text.size(); ++i) {
    if (istarts_with(text, i, needle)) return i;
  }
  return std::string_view::npos;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    cp = 0xFFFD;
  }
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

struct NamedEntity {
  std::string_view name;
  std::uint32_t code_point;
};

constexpr std::array<NamedEntity, 16> kEntities = {{
    {"amp", '&'},      {"lt", '<'},       {"gt", '>'},
    {"quot", '"'},     {"apos", '\''},    {"nbsp", 0xA0},
    {"copy", 0xA9},    {"reg", 0xAE},     {"ndash", 0x2013},
    {"mdash", 0x2014}, {"lsquo", 0x2018}, {"rsquo", 0x2019},
    {"ldquo", 0x201C}, {"rdquo", 0x201D}, {"hellip", 0x2026},
    {"middot", 0xB7},
}};

// Decodes the entity starting at text[at] == '&'. Returns the number of
// bytes consumed, 0 if this is not a recognised entity.
std::size_t decode_entity(std::string_view text, std::size_t at,
                          std::string& out) {
  const std::size_t semi = text.find(';', at + 1);
  if (semi == std::string_view::npos || semi - at > 12) return 0;
  const std::string_view body = text.substr(at + 1, semi - at - 1);
  if (body.size() >= 2 && body[0] == '#') {
    std::uint32_t cp = 0;
    const bool hex = body[1] == 'x' || body[1] == 'X';
    const std::string_view digits = body.substr(hex ? 2 : 1);
    if (digits.empty()) return 0;
    for (char c : digits) {
      int d;
      if (c >= '0' && c <= '9') {
        d = c - '0';
      } else if (hex && c >= 'a' && c <= 'f') {
        d = c - 'a' + 10;
      } else if (hex && c >= 'A' && c <= 'F') {
        d = c - 'A' + 10;
      } else {
        return 0;
      }
      cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
      if (cp > 0x10FFFF) cp = 0x110000;
    }
    append_utf8(out, cp);
    return semi - at + 1;
  }
  for (const NamedEntity& entity : kEntities) {
    if (body == entity.name) {
      append_utf8(out, entity.code_point);
      return semi - at + 1;
    }
  }
  return 0;
}

void append_decoded(std::string_view text, std::string& out) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '&') {
      if (const std::size_t used = decode_entity(text, i, out)) {
        i += used - 1;
        continue;
      }
    }
    out += text[i];
  }
}

struct Tag {
  std::string name;  // lowercase
  bool closing = false;
  bool self_closing = false;
  std::string_view attributes;
  std::size_t end = 0;  // one past '>'
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
         c == ':' || c == '_';
}

// Parses a tag at html[at] == '<'. Returns false when this is not markup.
bool parse_tag(std::string_view html, std::size_t at, Tag& tag) {
  std::size_t i = at + 1;
  if (i < html.size() && html[i] == '/') {
    tag.closing = true;
    ++i;
  }
  if (i >= html.size() || !std::isalpha(static_cast<unsigned char>(html[i]))) {
    return false;
  }
  const std::size_t name_start = i;
  while (i < html.size() && is_name_char(html[i])) ++i;
  tag.name.clear();
  for (std::size_t k = name_start; k < i; ++k) {
    tag.name += ascii_lower(html[k]);
  }
  const std::size_t attr_start = i;
  char quote = 0;
  for (; i < html.size(); ++i) {
    const char c = html[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      break;
    }
  }
  if (i >= html.size()) return false;
  tag.self_closing = i > attr_start && html[i - 1] == '/';
  tag.attributes = html.substr(attr_start, i - attr_start);
  tag.end = i + 1;
  return true;
}

// Value of attribute `name` (lowercase) inside a tag's attribute text.
std::string attribute_value(std::string_view attributes,
                            std::string_view name) {
  std::size_t i = 0;
  while (i < attributes.size()) {
    while (i < attributes.size() &&
           !is_name_char(attributes[i])) {
      ++i;
    }
    const std::size_t key_start = i;
    while (i < attributes.size() && is_name_char(attributes[i])) ++i;
    std::string key;
    for (std::size_t k = key_start; k < i; ++k) key += ascii_lower(attributes[k]);
    while (i < attributes.size() && attributes[i] == ' ') ++i;
    if (i >= attributes.size() || attributes[i] != '=') continue;
    ++i;
    while (i < attributes.size() && attributes[i] == ' ') ++i;
    std::string value;
    if (i < attributes.size() && (attributes[i] == '"' || attributes[i] == '\'')) {
      const char quote = attributes[i++];
      const std::size_t end = attributes.find(quote, i);
      const std::size_t stop = end == std::string_view::npos ? attributes.size() : end;
      value = std::string(attributes.substr(i, stop - i));
      i = stop + 1;
    } else {
      const std::size_t start = i;
      while (i < attributes.size() && attributes[i] != ' ' && attributes[i] != '/') ++i;
      value = std::string(attributes.substr(start, i - start));
    }
    if (key == name) {
      std::string decoded;
      append_decoded(value, decoded);
      return decoded;
    }
  }
  return {};
}

// Index just past the closing tag `</name ...>`, or the end of input.
std::size_t skip_raw_element(std::string_view html, std::size_t from,
                             std::string_view name, std::size_t* content_end) {
  std::size_t pos = from;
  while (true) {
    pos = ifind(html, "</", pos);
    if (pos == std::string_view::npos) {
      *content_end = html.size();
      return html.size();
    }
    if (istarts_with(html, pos + 2, name) &&
        (pos + 2 + name.size() >= html.size() ||
         !is_name_char(html[pos + 2 + name.size()]))) {
      *content_end = pos;
      const std::size_t close = html.find('>', pos);
      return close == std::string_view::npos ? html.size() : close + 1;
    }
    pos += 2;
  }
}

bool is_space_at(std::string_view text, std::size_t i, std::size_t* width) {
  const char c = text[i];
  if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
    *width = 1;
    return true;
  }
  if (text.substr(i, kNbsp.size()) == kNbsp) {
    *width = kNbsp.size();
    return true;
  }
  return false;
}

// Collapses whitespace inside lines, trims them and drops blank lines.
std::string tidy_lines(std::string_view raw) {
  std::string out;
  std::string line;
  bool pending_space = false;
  auto flush = [&]() {
    if (!line.empty()) {
      if (!out.empty()) out += '\n';
      out += line;
    }
    line.clear();
    pending_space = false;
  };
  for (std::size_t i = 0; i < raw.size();) {
    std::size_t width = 0;
    if (raw[i] == '\n') {
      flush();
      ++i;
    } else if (is_space_at(raw, i, &width)) {
      pending_space = !line.empty();
      i += width;
    } else {
      if (pending_space) line += ' ';
      pending_space = false;
      line += raw[i];
      ++i;
    }
  }
  flush();
  return out;
}

}  // namespace

std::string html_to_text(std::string_view input,
                         const ExtractionOptions& options) {
  const std::string sanitized = sanitize_utf8(input);
  const std::string_view html = sanitized;
  std::string raw;
  raw.reserve(html.size());

  std::size_t i = 0;
  while (i < html.size()) {
    const char c = html[i];
    if (c == '&') {
      if (const std::size_t used = decode_entity(html, i, raw)) {
        i += used;
      } else {
        raw += c;
        ++i;
      }
      continue;
    }
    if (c != '<') {
      raw += c;
      ++i;
      continue;
    }

    if (html.compare(i, 4, "<!--") == 0) {
      const std::size_t end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    if (html.compare(i, 9, "<![CDATA[") == 0) {
      const std::size_t end = html.find("]]>", i + 9);
      const std::size_t stop = end == std::string_view::npos ? html.size() : end;
      raw.append(html.substr(i + 9, stop - i - 9));
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    if (html.compare(i, 2, "<!") == 0 || html.compare(i, 2, "<?") == 0) {
      const std::size_t end = html.find('>', i);
      i = end == std::string_view::npos ? html.size() : end + 1;
      continue;
    }

    Tag tag;
    if (!parse_tag(html, i, tag)) {
      raw += c;
      ++i;
      continue;
    }
    i = tag.end;
    if (tag.closing) {
      if (is_block_element(tag.name)) raw += '\n';
      continue;
    }

    if (tag.name == "script" || tag.name == "style" ||
        tag.name == "template" || tag.name == "title") {
      if (tag.self_closing) continue;
      std::size_t content_end = 0;
      const std::size_t after =
          skip_raw_element(html, i, tag.name, &content_end);
      if (tag.name == "title" && options.include_title) {
        raw += '\n';
        append_decoded(html.substr(i, content_end - i), raw);
        raw += '\n';
      }
      i = after;
      continue;
    }
    if (tag.name == "meta") {
      if (options.include_title) {
        const std::string name = attribute_value(tag.attributes, "name");
        std::string lowered;
        for (char ch : name) lowered += ascii_lower(ch);
        if (lowered == "description" || lowered == "keywords") {
          raw += '\n';
          raw += attribute_value(tag.attributes, "content");
          raw += '\n';
        }
      }
      continue;
    }
    if (is_block_element(tag.name)) raw += '\n';
  }
  return tidy_lines(raw);
}

Document segment_and_tokenize(std::string_view input, std::string page_id) {
  const std::string text = sanitize_utf8(input);
  Document doc;
  doc.page_id = std::move(page_id);

  auto emit_sentence = [&](std::size_t begin, std::size_t end) {
    const std::string_view piece = std::string_view(text).substr(begin, end - begin);
    std::vector<WordSpan> words = split_words(piece);
    if (words.empty()) return;
    Sentence sentence;
    sentence.index = doc.sentences.size();
    sentence.raw_text = tidy_lines(piece);
    sentence.token_begin = doc.tokens.size();
    for (WordSpan& word : words) {
      doc.tokens.push_back(Token{std::move(word.surface),
                                 std::move(word.normalized), doc.tokens.size(),
                                 sentence.index});
    }
    sentence.token_end = doc.tokens.size();
    doc.sentences.push_back(std::move(sentence));
  };

  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      emit_sentence(start, i);
      start = i + 1;
    } else if (c == '.' || c == '!' || c == '?') {
      std::size_t width = 0;
      const bool at_end = i + 1 == text.size();
      if (at_end || text[i + 1] == '\n' || is_space_at(text, i + 1, &width)) {
        emit_sentence(start, i + 1);
        start = i + 1;
      }
    }
  }
  emit_sentence(start, text.size());
  return doc;
}

bool is_page_file(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = ascii_lower(c);
  return ext == ".html" || ext == ".htm" || ext == ".txt";
}

Document load_page(const std::filesystem::path& path, std::string page_id,
                   const ExtractionOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read page '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading page '" + path.string() + "'");
  std::string ext = path.extension().string();
  for (char& c : ext) c = ascii_lower(c);
  const std::string content = buffer.str();
  if (ext == ".html" || ext == ".htm") {
    return segment_and_tokenize(html_to_text(content, options),
                                std::move(page_id));
  }
  return segment_and_tokenize(content, std::move(page_id));
}

}  // namespace pagesense
