#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqtk/quality.hpp"

namespace dqtk {

enum class EntryKind { Assessment, Remediation };

std::string to_string(EntryKind kind);
EntryKind entry_kind_from_string(const std::string& s);

// One assessed metric or one applied remediation. Assessments keep
// input_fingerprint == output_fingerprint and embed the full QualityResult so
// a report can be regenerated from the ledger alone.
struct LineageEntry {
  std::string op_id;
  EntryKind kind = EntryKind::Assessment;
  Json params = Json::object();
  std::optional<std::string> decisions_ref;
  std::int64_t rows_affected = 0;
  std::vector<std::string> cols_affected;
  std::optional<double> score_before;
  std::optional<double> score_after;
  std::string input_fingerprint;
  std::string output_fingerprint;
  std::string timestamp;
  std::string status = "ok";  // ok | failed | skipped
  std::optional<std::string> error;
  std::optional<Json> result;  // embedded QualityResult for assessments

  Json to_json() const;
  static LineageEntry from_json(const Json& j);
};

class LineageLedger {
 public:
  void append(LineageEntry entry);
  const std::vector<LineageEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Fingerprint chain check: successful remediations must consume the latest
  // dataset fingerprint, assessments must not change it.
  void validate_chain() const;
  // Fingerprint of the latest dataset state recorded in the ledger.
  std::optional<std::string> latest_fingerprint() const;

  std::string to_jsonl() const;
  static LineageLedger from_jsonl(const std::string& text);
  void save(const std::string& path) const;
  static LineageLedger load(const std::string& path);

 private:
  std::vector<LineageEntry> entries_;
};

}  // namespace dqtk
