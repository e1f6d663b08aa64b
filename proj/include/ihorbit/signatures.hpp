// Middle-degree intersection forms, exact signatures, equivariant
// signatures Sign(g, X) and the averaging formula for orbit spaces.

#ifndef IHORBIT_SIGNATURES_HPP
#define IHORBIT_SIGNATURES_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ihorbit/chains.hpp"
#include "ihorbit/group.hpp"
#include "ihorbit/linalg.hpp"

namespace ihorbit
{

enum class FormParity
{
    Symmetric,
    Skew,
};

/// How the form was certified to be the intersection form.
enum class FormRegime
{
    /// Every link has the rational homology of a sphere, so IH = H.
    HomologyManifold,
    /// The canonical map IH_m -> H_m was checked to be an isomorphism.
    CanonicalIso,
    /// Supplied from outside (matrix plus representation).
    External,
};

char const* regimeName(FormRegime r);

/// B(x_i, x_j) on a basis of middle homology.  basis[i] is the cap product
/// [X] with cocycles[i]; B(x_i, x_j) = <cocycles[i] u cocycles[j], [X]>.
struct MiddleForm
{
    int degree = 0;
    std::vector<SparseVec> basis;
    std::vector<SparseVec> cocycles;
    Matrix b;
    FormParity parity = FormParity::Symmetric;
    FormRegime regime = FormRegime::HomologyManifold;
    /// Cohomology coordinates (cocycles modulo coboundaries), empty for
    /// external forms.
    HomologyBasis cohomology;

    std::size_t rank() const { return b.rows(); }
};

/// Does every link of a d-simplex have the rational homology of S^(n-d-1)?
/// Reports the first offending simplex.
std::optional<Simplex> homologyManifoldWitness(SimplicialComplex const& k);

struct CupFormOptions
{
    /// Size limit (total simplices of one subdivision) for the IH comparison
    /// used when K is not a homology manifold.
    std::size_t ihBudget = 20000;
};

/// Cup-product form on H^m of an oriented 2m-pseudomanifold.  Throws
/// NotOriented for a bad orientation or odd dimension, FormUnavailable when
/// IH_m -> H_m cannot be confirmed to be an isomorphism.
MiddleForm cupFormMiddle(SimplicialComplex const& k, Orientation const& orientation, CupFormOptions const& opt = {});

/// n_+ - n_- by exact congruence.  Throws NotSymmetric.
int signatureExact(Matrix const& b);

/// Matrices rho(g) for every group element (in group order).
struct GRep
{
    FiniteGroup group;
    std::vector<Matrix> matrices;
};

/// Throws BadRep unless the matrices are square of one size, rho(e) = I and
/// rho(gh) = rho(g) rho(h).
void validateRep(GRep const& rep);

/// Extends generator matrices multiplicatively; BadRep on a contradiction.
GRep repFromGenerators(FiniteGroup const& group, std::map<int, Matrix> const& generators);

/// g_* on the basis of a form computed by cupFormMiddle on action.complex.
GRep representationOnMiddle(GroupAction const& action, MiddleForm const& form);

enum class SignaturePath
{
    Exact,
    Numeric,
};

struct GSignatureValue
{
    SignaturePath path = SignaturePath::Exact;
    /// Real part for even middle degree, 0 otherwise.
    double re = 0.0;
    /// Imaginary part for odd middle degree, 0 otherwise.
    double im = 0.0;
    /// Set on the exact path (an integer).
    std::optional<int> exact;
    bool snapped = false;
    double errorBound = 0.0;

    std::complex<double> value() const { return {re, im}; }
};

struct GSignatureOptions
{
    /// Seed for a random positive definite start of the averaged inner
    /// product; 0 means the standard inner product.
    std::uint64_t seed = 0;
    bool allowExact = true;
};

/// Sign(g, X).  Throws NotInvariant when rho(g) does not preserve B and
/// Degenerate when the form is numerically singular.
GSignatureValue gSignature(MiddleForm const& form, GRep const& rep, int g, GSignatureOptions const& opt = {});

/// Exact rational check of dim V^G = (1/|G|) sum tr rho(g).
bool traceFormulaHolds(GRep const& rep);

/// Common fixed subspace of a representation, as columns.
Matrix invariantSubspace(GRep const& rep);

struct GSignatureEntry
{
    int element = 0;
    std::string label;
    GSignatureValue value;
};

struct AveragingOptions
{
    double tolerance = 1e-8;
    int jobs = 1;
    int maxSubdivisions = 2;
    CupFormOptions cup;
};

struct GSignatureReport
{
    int middleDegree = 0;
    FormParity parity = FormParity::Symmetric;
    int signature = 0;
    std::vector<GSignatureEntry> elements;
    /// (1/|G|) sum Sign(g, X); exact when every element took the exact path.
    std::optional<Rational> averageExact;
    std::complex<double> average;
    bool conjugationInvariant = true;
    bool traceFormula = true;

    // orbit side
    int subdivisions = 0;
    bool regularityVerified = true;
    std::size_t orbitSimplices = 0;
    FormRegime orbitRegime = FormRegime::HomologyManifold;
    int orbitSignature = 0;

    bool pass = false;
    std::string verdict;
};

/// Sign(X/G) computed on the orbit complex against the average of the
/// g-signatures of X.  Throws NotOriented for orientation-reversing actions.
GSignatureReport averagingCheck(GroupAction const& action, Orientation const& orientation,
                                AveragingOptions const& opt = {});

} // namespace ihorbit

#endif // IHORBIT_SIGNATURES_HPP
