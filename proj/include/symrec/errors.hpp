#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace symrec {

// Base of every domain error. `code()` is a stable machine token used by the
// CLI diagnostics and the HTTP error bodies.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class EmptyCatalog : public Error {
 public:
  EmptyCatalog() : Error("EmptyCatalog", "no disorders supplied") {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error("InvalidArgument", what) {}
};

class ContradictoryObservation : public Error {
 public:
  explicit ContradictoryObservation(std::string symptom)
      : Error("ContradictoryObservation",
              "symptom '" + symptom + "' is already observed with the opposite state"),
        symptom_(std::move(symptom)) {}
  const std::string& symptom() const noexcept { return symptom_; }

 private:
  std::string symptom_;
};

// Generator or disorder spec breaks an invariant. `path` is a JSON path when
// it was parsed from a document, empty otherwise.
class SpecValidation : public Error {
 public:
  explicit SpecValidation(std::string detail, std::string path = {})
      : Error("SpecValidation", path.empty() ? detail : path + ": " + detail),
        detail_(std::move(detail)),
        path_(std::move(path)) {}
  const std::string& detail() const noexcept { return detail_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::string detail_;
  std::string path_;
};

class PresentOutsideSupport : public Error {
 public:
  explicit PresentOutsideSupport(const std::string& symptom)
      : Error("PresentOutsideSupport",
              "present symptom '" + symptom + "' is not in the disorder's support") {}
};

class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& what) : Error("Unsupported", what) {}
};

class CountOverflow : public Error {
 public:
  CountOverflow() : Error("CountOverflow", "profile count exceeds 64-bit range") {}
};

class Overbudget : public Error {
 public:
  Overbudget(std::string disorder, std::uint64_t needed, std::uint64_t budget)
      : Error("Overbudget", "disorder '" + disorder + "' needs " +
                                std::to_string(needed) + " profiles, budget is " +
                                std::to_string(budget)),
        disorder_(std::move(disorder)) {}
  const std::string& disorder() const noexcept { return disorder_; }

 private:
  std::string disorder_;
};

class UnknownDataset : public Error {
 public:
  explicit UnknownDataset(const std::string& id)
      : Error("UnknownDataset", "unknown dataset '" + id + "'") {}
};

class UnknownSession : public Error {
 public:
  explicit UnknownSession(const std::string& id)
      : Error("UnknownSession", "unknown session '" + id + "'") {}
};

class UnknownSymptom : public Error {
 public:
  explicit UnknownSymptom(const std::string& symptom)
      : Error("UnknownSymptom", "symptom '" + symptom + "' is not in the symptom space") {}
};

// Matrix CSV failure with a 1-based location. `row` is the line number in the
// file (header = 1), `col` the field index (label = 1). A row with the wrong
// field count points at its first missing or surplus field.
class ParseError : public Error {
 public:
  enum class Kind { EmptyFile, NonRectangular, BadCell, BadHeader, DuplicateSymptomColumn, BadLabel };

  ParseError(Kind kind, std::size_t row, std::size_t col, std::string text);

  Kind kind() const noexcept { return kind_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }
  const std::string& text() const noexcept { return text_; }

 private:
  Kind kind_;
  std::size_t row_;
  std::size_t col_;
  std::string text_;
};

const char* to_string(ParseError::Kind kind);

// Spec JSON structurally wrong; `path` is a JSON path like `$.generators[1].k`.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, std::string reason)
      : Error("SchemaError", path + ": " + reason),
        path_(std::move(path)),
        reason_(std::move(reason)) {}
  const std::string& path() const noexcept { return path_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string path_;
  std::string reason_;
};

}  // namespace symrec
