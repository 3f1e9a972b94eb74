#pragma once

#include <string>

#include "pst/chain.hpp"

namespace pst {

// {"n": int, "couplings": [...], "fields": [...], "statistics": "fermionic"|"bosonic"}
// Throws FormatError on malformed documents.
ChainSpec chain_from_json(const std::string& text);
ChainSpec read_chain_file(const std::string& path);
std::string chain_to_json(const ChainSpec& chain);

}  // namespace pst
