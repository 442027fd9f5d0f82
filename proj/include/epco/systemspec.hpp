#pragma once

#include "epco/constructions.hpp"
#include "epco/toml.hpp"

namespace epco {

/// "integers", "cyclic:N", "permutation:N" (alias "symmetric:N"),
/// "product(a,b,...)".
GroupPtr group_from_description(const std::string& text);

/// A system read from a TOML document, keeping builder metadata when the
/// document used a [construct] section.
struct LoadedSystem {
    System system;
    std::optional<EpkParams> epk;
};

/// Schema (schema_version = 1): either [construct] with builder = "epk",
/// a, b; or explicit [group], [graph] + [[graph.edges]], [action], [cocycle].
LoadedSystem load_system_toml(const std::string& text);

/// Emits the explicit schema for the system (round-trips through
/// load_system_toml).
std::string system_to_toml(const System& sys);

} // namespace epco
