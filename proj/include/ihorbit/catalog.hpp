// Built-in example complexes and actions.

#ifndef IHORBIT_CATALOG_HPP
#define IHORBIT_CATALOG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ihorbit/chains.hpp"
#include "ihorbit/complex.hpp"
#include "ihorbit/group.hpp"

namespace ihorbit
{

struct CatalogItem
{
    std::string name;
    std::string description;
    SimplicialComplex complex;
    std::optional<GroupAction> action;
    /// Set when the complex is an orientable pseudomanifold.
    std::optional<Orientation> orientation;
    bool free = false;
};

struct CatalogEntry
{
    std::string name;
    std::string params;
    std::string description;
};

std::vector<CatalogEntry> catalogEntries();

/// Builds a named example.  Throws OutOfRange for an unknown name or bad
/// parameter.
CatalogItem catalogItem(std::string const& name, std::vector<int> const& params = {});

/// Every catalog example that carries a group action, at default size.
std::vector<CatalogItem> catalogActions();

/// s-fold suspension; an action is extended by fixing both apexes.
CatalogItem suspendItem(CatalogItem const& item, int times);

/// Disjoint copies of k with a group permuting them.  copyPerm maps each
/// generator to the permutation of copy indices it induces.
GroupAction copiesAction(SimplicialComplex const& k, FiniteGroup group,
                         std::map<int, std::vector<int>> const& copyPerm);

/// n x n grid torus (n >= 3); vertex (i, j) has id i*n + j and the squares
/// are cut along the (1, 1) diagonal.
SimplicialComplex gridTorus(int n);

/// Orientation from fundamentalClass, or nullopt.
std::optional<Orientation> orientationOf(SimplicialComplex const& k);

/// Directory holding data files such as the CP^2 triangulation.
std::string assetDirectory();

} // namespace ihorbit

#endif // IHORBIT_CATALOG_HPP
