#pragma once

// Visit-log ingestion: turns (patient, date, diagnosis-code) records into
// labeled cluster-frequency vectors.
//
// Semantics, pinned down for reproducibility:
//   - a row is one (patient, date, code) record; a visit is a distinct
//     (patient, date) pair, and the "fewer than two visits" exclusion counts
//     distinct dates among the rows that survive filtering;
//   - a patient is labeled +1 iff any row maps to a target cluster;
//   - for positives, every row dated within horizon_days before the first
//     target-coded visit (inclusive on both ends) or after it is dropped;
//   - rows whose code is not in the map are skipped and counted (or the run
//     fails, under the Fail policy);
//   - target-cluster feature columns are zeroed in the output vectors;
//   - output rows and audit entries are sorted by patient id, so the result
//     does not depend on input ordering.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "e2d2/dataset.hpp"
#include "e2d2/errors.hpp"

namespace e2d2 {

struct VisitRecord {
  std::string patient_id;
  int date = 0;  // days since 1970-01-01 (proleptic Gregorian)
  std::string code;
};

// Days-from-civil-date conversion (proleptic Gregorian calendar).
inline int civil_to_days(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<int>(doe) - 719468;
}

inline void days_to_civil(int z, int& y, int& m, int& d) {
  z += 719468;
  const int era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int yr = static_cast<int>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = yr + (m <= 2);
}

// Strict ISO-8601 calendar date (YYYY-MM-DD).
inline int parse_iso_date(const std::string& s) {
  auto fail = [&]() -> int { throw MalformedDate("bad ISO-8601 date: '" + s + "'"); };
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return fail();
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (s[i] < '0' || s[i] > '9') return fail();
  }
  const int y = std::stoi(s.substr(0, 4));
  const int m = std::stoi(s.substr(5, 2));
  const int d = std::stoi(s.substr(8, 2));
  if (m < 1 || m > 12 || d < 1 || d > 31) return fail();
  const int days = civil_to_days(y, m, d);
  int ry, rm, rd;
  days_to_civil(days, ry, rm, rd);
  if (ry != y || rm != m || rd != d) return fail();  // e.g. Feb 30
  return days;
}

inline std::string format_iso_date(int days) {
  int y, m, d;
  days_to_civil(days, y, m, d);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
  return buf;
}

struct CodeMap {
  std::unordered_map<std::string, int> clusters;  // raw code -> cluster id
  int num_clusters = 0;                           // ids are dense 0..num_clusters-1
  std::set<int> target_clusters;

  void validate() const {
    if (clusters.empty()) throw InvalidSpec("code map: empty");
    std::set<int> seen;
    for (const auto& [code, cid] : clusters) {
      if (code.empty()) throw InvalidSpec("code map: empty code string");
      if (cid < 0) throw InvalidSpec("code map: negative cluster id");
      seen.insert(cid);
    }
    const int max_id = *seen.rbegin();
    if (max_id + 1 != static_cast<int>(seen.size())) {
      throw InvalidSpec("code map: cluster ids must be contiguous 0.." +
                        std::to_string(max_id));
    }
    if (num_clusters != max_id + 1) {
      throw InvalidSpec("code map: num_clusters disagrees with ids");
    }
    for (int t : target_clusters) {
      if (t < 0 || t >= num_clusters) {
        throw InvalidSpec("code map: target cluster " + std::to_string(t) + " out of range");
      }
    }
  }
};

enum class UnmappedCodePolicy { SkipWithCount, Fail };

struct PatientAudit {
  std::string patient_id;
  int label = -1;
  bool kept = false;
  std::string reason;  // "kept", "insufficient_visits", "insufficient_visits_after_exclusion"
  std::optional<int> first_target_date;
  int rows_total = 0;
  int rows_unmapped = 0;
  int rows_dropped_window = 0;  // within the pre-diagnosis horizon, incl. the first target visit
  int rows_dropped_after = 0;   // strictly after the first target visit
  int rows_kept = 0;
  int visits_kept = 0;  // distinct dates among kept rows
};

struct IngestResult {
  LabeledDataset dataset;
  std::vector<std::string> patient_ids;  // aligned with dataset rows
  std::vector<PatientAudit> audit;       // every input patient, sorted by id
};

inline IngestResult build_frequency_vectors(const std::vector<VisitRecord>& visits,
                                            const CodeMap& map, int horizon_days,
                                            UnmappedCodePolicy policy =
                                                UnmappedCodePolicy::SkipWithCount) {
  map.validate();
  if (horizon_days < 1) throw InvalidSpec("horizon_days must be a positive integer");
  if (visits.empty()) throw EmptyInput("build_frequency_vectors: no visit records");

  struct Row {
    int date;
    int cluster;
  };
  // std::map keeps patients sorted by id, which fixes the output order.
  std::map<std::string, std::vector<Row>> by_patient;
  std::map<std::string, int> unmapped_counts;
  std::map<std::string, int> row_totals;

  for (const auto& rec : visits) {
    if (rec.patient_id.empty()) throw InvalidSpec("visit record with empty patient_id");
    ++row_totals[rec.patient_id];
    const auto it = map.clusters.find(rec.code);
    if (it == map.clusters.end()) {
      if (policy == UnmappedCodePolicy::Fail) {
        throw UnmappedCode("code '" + rec.code + "' (patient " + rec.patient_id +
                           ") is not in the code map");
      }
      ++unmapped_counts[rec.patient_id];
      continue;
    }
    by_patient[rec.patient_id].push_back({rec.date, it->second});
  }

  IngestResult result;
  result.dataset.p = map.num_clusters;

  for (auto& [pid, rows] : by_patient) {
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      return a.date != b.date ? a.date < b.date : a.cluster < b.cluster;
    });

    PatientAudit audit;
    audit.patient_id = pid;
    audit.rows_total = row_totals[pid];
    audit.rows_unmapped = unmapped_counts.count(pid) ? unmapped_counts[pid] : 0;

    std::optional<int> first_target;
    for (const auto& row : rows) {
      if (map.target_clusters.count(row.cluster)) {
        first_target = row.date;
        break;
      }
    }
    audit.label = first_target.has_value() ? +1 : -1;
    audit.first_target_date = first_target;

    Vector freq(std::size_t(map.num_clusters), 0.0);
    std::set<int> kept_dates;
    for (const auto& row : rows) {
      if (first_target.has_value()) {
        if (row.date > *first_target) {
          ++audit.rows_dropped_after;
          continue;
        }
        if (*first_target - row.date <= horizon_days) {
          ++audit.rows_dropped_window;
          continue;
        }
      }
      ++audit.rows_kept;
      kept_dates.insert(row.date);
      freq[std::size_t(row.cluster)] += 1.0;
    }
    audit.visits_kept = static_cast<int>(kept_dates.size());

    if (audit.visits_kept < 2) {
      audit.kept = false;
      audit.reason = (audit.rows_dropped_window + audit.rows_dropped_after) > 0
                         ? "insufficient_visits_after_exclusion"
                         : "insufficient_visits";
      result.audit.push_back(std::move(audit));
      continue;
    }

    for (int t : map.target_clusters) freq[std::size_t(t)] = 0.0;

    audit.kept = true;
    audit.reason = "kept";
    result.dataset.samples.push_back(std::move(freq));
    result.dataset.labels.push_back(audit.label);
    result.patient_ids.push_back(pid);
    result.audit.push_back(std::move(audit));
  }

  // Patients whose every row was unmapped still appear in the audit.
  for (const auto& [pid, total] : row_totals) {
    if (by_patient.count(pid)) continue;
    PatientAudit audit;
    audit.patient_id = pid;
    audit.label = -1;
    audit.kept = false;
    audit.reason = "insufficient_visits";
    audit.rows_total = total;
    audit.rows_unmapped = unmapped_counts[pid];
    result.audit.push_back(std::move(audit));
  }
  std::sort(result.audit.begin(), result.audit.end(),
            [](const PatientAudit& a, const PatientAudit& b) {
              return a.patient_id < b.patient_id;
            });
  return result;
}

inline std::vector<VisitRecord> read_visits_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty visits file: " + path);
  if (split_csv_line(line) != std::vector<std::string>{"patient_id", "visit_date", "code"}) {
    throw IoError("visits header must be patient_id,visit_date,code: " + path);
  }
  std::vector<VisitRecord> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != 3 || f[0].empty() || f[2].empty()) {
      throw IoError(path + ": line " + std::to_string(lineno) + " malformed");
    }
    out.push_back({f[0], parse_iso_date(f[1]), f[2]});
  }
  return out;
}

inline CodeMap read_code_map_csv(const std::string& path, const std::set<int>& target_clusters) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty code map file: " + path);
  if (split_csv_line(line) != std::vector<std::string>{"code", "cluster"}) {
    throw IoError("code map header must be code,cluster: " + path);
  }
  CodeMap map;
  map.target_clusters = target_clusters;
  int max_id = -1;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != 2 || f[0].empty()) {
      throw IoError(path + ": line " + std::to_string(lineno) + " malformed");
    }
    int cid;
    try {
      cid = std::stoi(f[1]);
    } catch (const std::exception&) {
      throw IoError(path + ": line " + std::to_string(lineno) + " bad cluster id '" + f[1] + "'");
    }
    if (map.clusters.count(f[0])) {
      throw IoError(path + ": duplicate code '" + f[0] + "'");
    }
    map.clusters[f[0]] = cid;
    max_id = std::max(max_id, cid);
  }
  map.num_clusters = max_id + 1;
  map.validate();
  return map;
}

inline nlohmann::json audit_to_json(const PatientAudit& a) {
  nlohmann::json j;
  j["patient_id"] = a.patient_id;
  j["label"] = a.label;
  j["kept"] = a.kept;
  j["reason"] = a.reason;
  if (a.first_target_date.has_value()) {
    j["first_target_date"] = format_iso_date(*a.first_target_date);
  } else {
    j["first_target_date"] = nullptr;
  }
  j["rows_total"] = a.rows_total;
  j["rows_unmapped"] = a.rows_unmapped;
  j["rows_dropped_window"] = a.rows_dropped_window;
  j["rows_dropped_after"] = a.rows_dropped_after;
  j["rows_kept"] = a.rows_kept;
  j["visits_kept"] = a.visits_kept;
  return j;
}

inline void write_audit_jsonl(std::ostream& os, const std::vector<PatientAudit>& audit) {
  for (const auto& a : audit) os << audit_to_json(a).dump() << "\n";
}

inline void write_audit_jsonl_file(const std::string& path,
                                   const std::vector<PatientAudit>& audit) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  write_audit_jsonl(os, audit);
  if (!os) throw IoError("write failed: " + path);
}

}  // namespace e2d2
