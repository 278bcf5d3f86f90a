#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "procscope/ocel.hpp"

namespace procscope {

/// Reads an OCEL 2.0 JSON document. Timestamps are normalized to UTC; object
/// attribute values without a "time" are stored at Timestamp::min().
///
/// Errors: ParseError for malformed JSON, SchemaError (with a JSON path) for
/// missing keys or wrongly typed values, ModelError when the decoded log
/// fails validate_log.
Log import_json(std::string_view text);

/// As above; non-fatal findings (ignored keys, duplicate relations) are
/// appended to `warnings`.
Log import_json(std::string_view text, std::vector<std::string>& warnings);

/// Writes a canonical OCEL 2.0 JSON document: types sorted by name, objects
/// and events by id, relationships by (qualifier, target), timestamps as
/// `YYYY-MM-DDThh:mm:ss.mmmZ`. Output is byte-deterministic. Throws
/// ModelError when the log is not valid.
std::string export_json(const Log& log);

}  // namespace procscope
