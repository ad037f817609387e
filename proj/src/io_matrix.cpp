#include <algorithm>
#include <unordered_set>

#include "symrec/errors.hpp"
#include "symrec/io.hpp"

namespace symrec {

namespace {

std::string describe(ParseError::Kind kind, std::size_t row, std::size_t col, const std::string& text) {
  std::string out = std::string(to_string(kind));
  if (row) out += " at row " + std::to_string(row);
  if (col) out += ", col " + std::to_string(col);
  if (!text.empty()) out += ": " + text;
  return out;
}

}  // namespace

ParseError::ParseError(Kind kind, std::size_t row, std::size_t col, std::string text)
    : Error("ParseError", describe(kind, row, col, text)),
      kind_(kind),
      row_(row),
      col_(col),
      text_(std::move(text)) {}

const char* to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::EmptyFile: return "EmptyFile";
    case ParseError::Kind::NonRectangular: return "NonRectangular";
    case ParseError::Kind::BadCell: return "BadCell";
    case ParseError::Kind::BadHeader: return "BadHeader";
    case ParseError::Kind::DuplicateSymptomColumn: return "DuplicateSymptomColumn";
    case ParseError::Kind::BadLabel: return "BadLabel";
  }
  return "?";
}

namespace io {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

MatrixDocument parse_matrix(std::string_view text) {
  using Kind = ParseError::Kind;
  if (text.empty()) throw ParseError(Kind::EmptyFile, 1, 1, "");

  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }

  auto header = split_fields(lines[0]);
  if (header[0].empty()) throw ParseError(Kind::BadHeader, 1, 1, "empty disorder column name");
  std::vector<SymptomId> names;
  std::unordered_set<std::string_view> seen;
  for (std::size_t c = 1; c < header.size(); ++c) {
    try {
      check_symptom_name(header[c]);
    } catch (const InvalidArgument&) {
      throw ParseError(Kind::BadHeader, 1, c + 1, std::string(header[c]));
    }
    if (!seen.insert(header[c]).second)
      throw ParseError(Kind::DuplicateSymptomColumn, 1, c + 1, std::string(header[c]));
    names.emplace_back(header[c]);
  }

  const std::size_t width = names.size();
  ProfileMatrix::Builder builder{SymptomSpace(std::move(names))};
  std::vector<Profile::Word> words(builder.words_per_row());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t row = i + 1;
    auto fields = split_fields(lines[i]);
    if (fields.size() != width + 1)
      throw ParseError(Kind::NonRectangular, row, std::min(fields.size(), width + 1) + 1,
                       "expected " + std::to_string(width + 1) + " fields, found " + std::to_string(fields.size()));
    try {
      check_disorder_label(fields[0]);
    } catch (const InvalidArgument&) {
      throw ParseError(Kind::BadLabel, row, 1, std::string(fields[0]));
    }
    std::fill(words.begin(), words.end(), 0);
    for (std::size_t c = 0; c < width; ++c) {
      auto cell = fields[c + 1];
      if (cell == "1")
        words[c / Profile::kWordBits] |= Profile::Word{1} << (c % Profile::kWordBits);
      else if (cell != "0")
        throw ParseError(Kind::BadCell, row, c + 2, std::string(cell));
    }
    builder.add_row(std::string(fields[0]), words);
  }

  MatrixDocument doc{std::move(builder).build(), {}};
  if (auto dups = doc.matrix.duplicates_dropped())
    doc.warnings.push_back("dropped " + std::to_string(dups) + " duplicate profile row" + (dups == 1 ? "" : "s"));
  return doc;
}

std::string serialize_matrix(const ProfileMatrix& matrix) {
  std::string out = "disorder";
  for (const auto& s : matrix.space().symptoms()) {
    out += ',';
    out += s;
  }
  out += '\n';
  out.reserve(out.size() + matrix.rows() * (matrix.columns() * 2 + 8));
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out += matrix.row_label_name(r);
    for (std::size_t c = 0; c < matrix.columns(); ++c) {
      out += ',';
      out += matrix.test(r, c) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

}  // namespace io
}  // namespace symrec
