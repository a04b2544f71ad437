#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "compmod/category.hpp"
#include "compmod/model.hpp"
#include "compmod/simulation.hpp"

namespace compmod {

/// Parse or resolution failure; the message carries the location (byte
/// position for syntax errors, JSON path for semantic ones).
struct ParseError : Error {
  using Error::Error;
};

struct TaskSpec {
  std::size_t index = 0;  // position in the document's task list
  std::string kind;
  std::map<std::string, std::string> args;
  std::size_t bound = 0;  // 0 = task default
};

struct CategoryEntry {
  FiniteCategory cat;
  Presheaf S;
};

/// Fully resolved document: every name reference checked at parse time.
struct Document {
  int version = 1;
  std::map<std::string, Model> models;
  std::map<std::string, Simulation> simulations;
  std::map<std::string, PresheafSimulation> presheaf_simulations;
  std::map<std::string, CategoryEntry> categories;
  std::vector<TaskSpec> tasks;
};

Document parse_document(const std::string& text);

/// Canonical serialization; parse(serialize(parse(d))) is the identity.
std::string serialize_document(const Document& doc);

struct TaskReport {
  std::size_t index = 0;
  std::string task;
  std::string verdict;  // "pass" | "fail" | "refused"
  std::vector<std::string> witnesses;
  std::map<std::string, std::int64_t> statistics;
};

std::vector<TaskReport> run_tasks(const Document& doc);

std::string render_reports_text(const std::vector<TaskReport>& reports);
std::string render_reports_json(const std::vector<TaskReport>& reports);

}  // namespace compmod
