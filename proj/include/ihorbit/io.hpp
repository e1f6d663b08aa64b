// Text format for complexes and actions (.scx).
//
//   # comment
//   dim 2                      optional
//   vertices a b c d           optional; fixes vertex ids
//   a b c                      one maximal simplex per line
//   orientation +-+-...        optional; one sign per top simplex in
//                              lexicographic order of vertex ids
//   group cyclic 4             or: symmetric n | trivial | table e a b ...
//   row e a b ...              (table only) one row per element, in order
//   gen 1: a->b b->c c->a      vertices not listed are fixed

#ifndef IHORBIT_IO_HPP
#define IHORBIT_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "ihorbit/chains.hpp"
#include "ihorbit/complex.hpp"
#include "ihorbit/group.hpp"

namespace ihorbit
{

struct ParsedInput
{
    SimplicialComplex complex;
    std::optional<GroupAction> action;
    std::optional<Orientation> orientation;
};

/// Errors carry "<source>:<line>:" prefixes: ParseError for syntax,
/// BadGroup / BadElement / NotSimplicialAction for the action block.
ParsedInput parseScx(std::istream& in, std::string const& source = "<input>");
ParsedInput parseScxFile(std::string const& path);

std::string serializeScx(SimplicialComplex const& k, GroupAction const* action = nullptr,
                         Orientation const* orientation = nullptr);
void writeScxFile(std::string const& path, SimplicialComplex const& k, GroupAction const* action = nullptr,
                  Orientation const* orientation = nullptr);

} // namespace ihorbit

#endif // IHORBIT_IO_HPP
