// JSON table specifications: {"family": "trig" | <registered name>,
//  "nu0":..., "nu1":..., "nu3":..., "omega1":..., "omega2":..., "N":...}.
#ifndef LBT_TABLE_IO_HPP
#define LBT_TABLE_IO_HPP

#include <functional>
#include <string>

#include "lbt/profiles.hpp"

namespace lbt::profiles {

/// Parses a JSON document into a ProfileTriple. Throws IncompatibleParameters
/// on bad parameters and std::runtime_error on malformed JSON.
ProfileTriple load_table_json(const std::string& text);

/// Registers a custom family factory; the factory receives the raw JSON text.
void register_family(const std::string& name,
                     std::function<ProfileTriple(const std::string&)> factory);

} // namespace lbt::profiles

#endif
