#ifndef WITLOC_WITLOC_HPP
#define WITLOC_WITLOC_HPP

// Everything except the manifest reader, which additionally needs nlohmann/json
// (include <witloc/io/manifest.hpp> for it).

#include <witloc/scalar.hpp>
#include <witloc/format.hpp>
#include <witloc/series.hpp>
#include <witloc/lattice.hpp>
#include <witloc/lattice_functions.hpp>
#include <witloc/cohom.hpp>
#include <witloc/genus.hpp>
#include <witloc/equivariant.hpp>
#include <witloc/localization.hpp>
#include <witloc/loopspace.hpp>
#include <witloc/two_variable.hpp>

#endif
