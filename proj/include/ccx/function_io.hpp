#pragma once

#include <string>

#include <json.hpp>

#include "ccx/pif.hpp"

namespace ccx {

// Function file:
//   {"n": 12, "builtin": "disj"}
//   {"n": 16, "builtin": {"name": "esetinc", "a": 8, "b": 8, "c2": 8, "g2": 2, "bar": false}}
//   {"n": 4, "default": "*", "entries": [{"a": 1, "b": 1, "c": 0, "v": -1}]}
// Builtins: disj, eq, ip, constant (with "value"), setinc, esetinc, ghd, eghd.
// "default" (-1, 1 or "*") fills every achievable type first; builtin and entries
// are applied on top in that order.
PIFunctionTable function_from_json(const nlohmann::json& doc);
PIFunctionTable function_from_text(const std::string& text);
PIFunctionTable load_function_file(const std::string& path);

// Entries form listing every defined cell.
nlohmann::json function_to_json(const PIFunctionTable& f);

}  // namespace ccx
