#pragma once

#include <string>

#include "json.hpp"

#include "aitlab/mtm/machine.hpp"

namespace aitlab::mtm {

// {
//   "states": ["scan", "done"],          // names, in id order
//   "start": "scan",
//   "work_tapes": 2,
//   "transitions": [
//     {"from": "scan", "read": "01", "consume": true, "input": "1",
//      "to": "done", "write": "11", "move": "RS", "emit": "1", "halt": false}
//   ]
// }
//
// `read`/`write` give one bit per work tape, tape 0 first; `move` one of
// L, R, S per tape; `emit` is null, "0" or "1". Each (from, read) pair needs
// either one record with consume=false, or two with consume=true and inputs
// "0" and "1". Unknown fields are errors.

MachineSpec machine_from_json(const nlohmann::json& doc);
nlohmann::json machine_to_json(const MachineSpec& machine);

MachineSpec load_machine(const std::string& path);

}  // namespace aitlab::mtm
