#pragma once

// JSON file formats for ologs, wiring diagrams, cost configurations, edit
// paths and traces. Every loader throws ParseError on malformed input.

#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "analogy/edit.hpp"
#include "analogy/olog.hpp"
#include "analogy/trace.hpp"
#include "analogy/wiring_diagram.hpp"

namespace analogy {

using Json = nlohmann::ordered_json;

// Reads a whole file as JSON. Throws ParseError (including for a missing
// file).
Json read_json_file(const std::filesystem::path& p);

Json value_to_json(const Value& v);
Value value_from_json(const Json& j);
Json label_to_json(const Label& l);
Label label_from_json(const Json& j);

Olog olog_from_json(const Json& j);
Json olog_to_json(const Olog& o);
Olog load_olog(const std::filesystem::path& p);

SensingFunctionDecl sensor_from_json(const Json& j);
Json sensor_to_json(const SensingFunctionDecl& d);
// Declarations may appear in any order; derivatives without a codomain get
// the difference set of their base.
SensorCatalog catalog_from_json(const Json& sensors, const Json& relations);

WiringDiagram wd_from_json(const Json& j);
Json wd_to_json(const WiringDiagram& w);
WiringDiagram load_wd(const std::filesystem::path& p);

// A relative "olog" path is resolved against base_dir.
CostFunction cost_from_json(const Json& j, const std::filesystem::path& base_dir = {});
Json cost_to_json(const CostFunction& c);
CostFunction load_cost(const std::filesystem::path& p);

Json edit_op_to_json(const EditOp& e);
EditOp edit_op_from_json(const Json& j);

// One op of an edit-path file. `op` is stored as written; when `inverse` is
// set the path applies invert(op).
struct EditPathRecord {
  std::string name;
  bool inverse = false;
  EditOp op;

  EditOp effective() const;
};

struct EditPathFile {
  std::string note;
  std::vector<EditPathRecord> records;

  // Throws EmptyPathError, or InvalidOpError for an inverse record without
  // the data its inverse needs.
  EditPath path() const;
  std::vector<std::string> names() const;
};

EditPathFile edit_path_from_json(const Json& j);
Json edit_path_to_json(const EditPathFile& f);
Json edit_path_to_json(const EditPath& p);
EditPathFile load_edit_path(const std::filesystem::path& p);

// JSON lines: one {"t","sensor","arg","value"} object per line. An optional
// first line {"time_unit": "..."} sets the unit. Blank lines are skipped.
Trace trace_from_jsonl(std::istream& in);
Trace load_trace(const std::filesystem::path& p);

}  // namespace analogy
