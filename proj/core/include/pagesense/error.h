#ifndef PAGESENSE_ERROR_H_
#define PAGESENSE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pagesense {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed XML. line() is 1-based, 0 when unknown. `source` names the file
// the text came from, if any.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line,
             const std::string& source = {})
      : Error((source.empty() ? "" : source + ": ") +
              (line > 0 ? "line " + std::to_string(line) + ": " : "") +
              message),
        message_(message),
        line_(line) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }

 private:
  std::string message_;
  std::size_t line_;
};

// Schema constraints a knowledge-base entry can violate.
enum class Constraint {
  kRootElement,
  kDmwIdRequired,
  kHeadwordRequired,
  kKeywordsRequired,
  kTooFewSenses,
  kNamesRequired,
  kEmptyName,
  kMeaningRequired,
  kDuplicateMeaning,
  kDuplicateNameAcrossSenses,
  kElementOrder,
};

// Stable short label for a constraint, e.g. "dmw_id required".
const char* constraint_name(Constraint constraint);

class ValidationError : public Error {
 public:
  ValidationError(Constraint constraint, const std::string& detail,
                  const std::string& source = {})
      : Error((source.empty() ? "" : source + ": ") +
              constraint_name(constraint) +
              (detail.empty() ? "" : " (" + detail + ")")),
        constraint_(constraint),
        detail_(detail) {}

  Constraint constraint() const { return constraint_; }
  const std::string& detail() const { return detail_; }

 private:
  Constraint constraint_;
  std::string detail_;
};

// Two entries share a normalized headword or a dmw_id.
class DuplicateEntryError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pagesense

#endif  // PAGESENSE_ERROR_H_
