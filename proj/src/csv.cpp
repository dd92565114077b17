#include "dqtk/csv.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace dqtk {

namespace {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based physical line the record starts on
};

std::vector<Record> parse_records(std::string_view text) {
  std::vector<Record> records;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t record_line = 1;

  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back({std::move(fields), record_line});
    fields.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        ++line;
        end_record();
        record_line = line;
        break;
      default:
        field.push_back(ch);
        field_started = true;
        break;
    }
  }
  if (in_quotes) throw Error("unterminated quoted field");
  if (!fields.empty() || field_started || !field.empty()) end_record();
  return records;
}

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lowered(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\r\n") != std::string::npos;
}

}  // namespace

Dataset load_csv_text(std::string_view text, const CsvOptions& opts) {
  auto records = parse_records(text);
  if (records.empty()) throw Error("empty input: header row required");
  const auto& header = records.front().fields;
  const std::size_t m = header.size();

  std::vector<std::string> missing_lower;
  missing_lower.reserve(opts.missing_tokens.size());
  for (const auto& tok : opts.missing_tokens) missing_lower.push_back(lowered(tok));
  auto is_missing_token = [&](const std::string& raw) {
    std::string t = trimmed(raw);
    if (t.empty()) return true;
    std::string low = lowered(t);
    return std::find(missing_lower.begin(), missing_lower.end(), low) != missing_lower.end();
  };

  std::vector<Row> rows;
  rows.reserve(records.size() - 1);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (rec.fields.size() != m) {
      throw Error("ragged row at line " + std::to_string(rec.line));
    }
    Row row;
    row.reserve(m);
    for (const auto& f : rec.fields) {
      if (is_missing_token(f)) {
        row.push_back(std::nullopt);
      } else {
        row.push_back(f);
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("zero data rows");

  const std::size_t n = rows.size();
  const std::size_t categorical_limit =
      std::max<std::size_t>(20, static_cast<std::size_t>(0.05 * static_cast<double>(n)));

  std::vector<ColumnKind> kinds(m, ColumnKind::Text);
  for (std::size_t c = 0; c < m; ++c) {
    auto ov = opts.kind_overrides.find(header[c]);
    if (ov != opts.kind_overrides.end()) {
      kinds[c] = ov->second;
      continue;
    }
    bool all_numeric = true;
    std::set<std::string> distinct;
    for (std::size_t r = 0; r < n; ++r) {
      if (!rows[r][c]) continue;
      if (all_numeric && !parse_number(*rows[r][c])) all_numeric = false;
      distinct.insert(*rows[r][c]);
    }
    if (all_numeric) {
      kinds[c] = ColumnKind::Numeric;
    } else if (distinct.size() <= categorical_limit) {
      kinds[c] = ColumnKind::Categorical;
    } else {
      kinds[c] = ColumnKind::Text;
    }
  }

  return Dataset::from_cells(header, kinds, std::move(rows), opts.target);
}

Dataset load_csv(const std::string& path, const CsvOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_csv_text(buf.str(), opts);
}

std::string to_csv_text(const Dataset& ds) {
  std::ostringstream out;
  for (std::size_t c = 0; c < ds.n_cols(); ++c) {
    if (c) out << ',';
    const std::string& name = ds.column(c).name;
    if (needs_quoting(name)) {
      out << '"';
      for (char ch : name) {
        if (ch == '"') out << '"';
        out << ch;
      }
      out << '"';
    } else {
      out << name;
    }
  }
  out << '\n';
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    for (std::size_t c = 0; c < ds.n_cols(); ++c) {
      if (c) out << ',';
      const Cell& cell = ds.cell(r, c);
      if (!cell) continue;
      if (needs_quoting(*cell) || trimmed(*cell).empty()) {
        out << '"';
        for (char ch : *cell) {
          if (ch == '"') out << '"';
          out << ch;
        }
        out << '"';
      } else {
        out << *cell;
      }
    }
    out << '\n';
  }
  return out.str();
}

void write_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file '" + path + "'");
  out << to_csv_text(ds);
}

}  // namespace dqtk
