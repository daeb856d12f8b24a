#pragma once

namespace awq {

inline const char* version() { return "0.1.0"; }

}  // namespace awq
