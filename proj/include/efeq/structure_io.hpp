#ifndef EFEQ_STRUCTURE_IO_HPP
#define EFEQ_STRUCTURE_IO_HPP

#include <filesystem>
#include <string>

#include "efeq/structure.hpp"
#include "json.hpp"

namespace efeq {

nlohmann::json structure_to_json(const FiniteStructure& s);
/// Throws StructureError on schema violations.
FiniteStructure structure_from_json(const nlohmann::json& j);

FiniteStructure load_structure(const std::filesystem::path& path);
void save_structure(const FiniteStructure& s, const std::filesystem::path& path);

}  // namespace efeq

#endif  // EFEQ_STRUCTURE_IO_HPP
