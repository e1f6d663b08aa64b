#include "ihorbit/signatures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "ihorbit/errors.hpp"
#include "ihorbit/filtered.hpp"
#include "ihorbit/ih.hpp"
#include "parallel.hpp"

namespace ihorbit
{

char const* regimeName(FormRegime r)
{
    switch (r)
    {
    case FormRegime::HomologyManifold:
        return "rational-homology-manifold";
    case FormRegime::CanonicalIso:
        return "canonical-map-iso";
    case FormRegime::External:
        return "external";
    }
    return "?";
}

namespace
{

bool hasSphereHomology(std::vector<int> const& betti, int dim)
{
    if (dim == 0)
        return betti.size() == 1 && betti[0] == 2;
    if (static_cast<int>(betti.size()) != dim + 1)
        return false;
    for (int i = 0; i <= dim; ++i)
        if (betti[static_cast<std::size_t>(i)] != ((i == 0 || i == dim) ? 1 : 0))
            return false;
    return true;
}

// Coboundary of the d-simplex idx, as a vector over (d+1)-simplices.
SparseVec coboundary(SimplicialComplex const& k, int d, std::size_t idx)
{
    SparseVec out;
    if (d + 1 > k.dim())
        return out;
    auto s = k.simplices(d)[idx];
    for (std::size_t c : k.cofaceLists(d)[idx])
    {
        auto t = k.simplices(d + 1)[c];
        // position of the vertex of t missing from s
        std::size_t i = 0;
        while (i < s.size() && s[i] == t[i])
            ++i;
        out.emplace_back(static_cast<std::int64_t>(c), Rational(i % 2 == 0 ? 1 : -1));
    }
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return a.first < b.first; });
    return out;
}

Eigen::MatrixXd toEigen(Matrix const& m)
{
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).toDouble();
    return out;
}

} // namespace

std::optional<Simplex> homologyManifoldWitness(SimplicialComplex const& k)
{
    int n = k.dim();
    for (int d = 0; d < n; ++d)
        for (std::size_t i = 0; i < k.count(d); ++i)
        {
            auto s = k.simplices(d).simplex(i);
            auto l = link(k, s);
            if (l.empty() || l.dim() != n - d - 1 || !hasSphereHomology(bettiNumbers(l), n - d - 1))
                return s;
        }
    return std::nullopt;
}

MiddleForm cupFormMiddle(SimplicialComplex const& k, Orientation const& orientation, CupFormOptions const& opt)
{
    if (k.empty())
        throw Error(ErrorKind::EmptyComplex, "empty complex");
    int n = k.dim();
    if (n % 2 != 0)
        throw Error(ErrorKind::NotOriented, "middle form needs an even-dimensional complex");
    if (orientation.dim != n || orientation.topSigns.size() != k.count(n))
        throw Error(ErrorKind::NotOriented, "orientation does not belong to this complex");
    if (!boundary(k, n, orientation.cycle()).empty())
        throw Error(ErrorKind::NotOriented, "orientation is not a cycle");
    int m = n / 2;

    MiddleForm form;
    form.degree = m;
    form.parity = m % 2 == 0 ? FormParity::Symmetric : FormParity::Skew;
    if (auto bad = homologyManifoldWitness(k))
    {
        if (barycentricSize(k) > opt.ihBudget)
            throw Error(ErrorKind::FormUnavailable,
                        "not a rational homology manifold and the IH comparison exceeds the size budget");
        IHModel model(skeletalFiltration(k), Perversity::lowerMiddle(std::max(n, 2)));
        auto c = model.canonicalMap(m);
        std::size_t r = rank(c);
        if (r != model.ih(m).dimension() || r != model.ordinary(m).dimension())
            throw Error(ErrorKind::FormUnavailable, "IH_m -> H_m is not an isomorphism");
        form.regime = FormRegime::CanonicalIso;
    }

    // cocycles by reduction with clearing
    EchelonBasis cob;
    std::vector<char> cleared(k.count(m), 0);
    if (m > 0)
        for (std::size_t t = 0; t < k.count(m - 1); ++t)
            if (cob.insert(coboundary(k, m - 1, t)))
                cleared[static_cast<std::size_t>(cob.vector(cob.rank() - 1).back().first)] = 1;
    std::vector<SparseVec> cocycles;
    EchelonBasis red;
    for (std::size_t s = 0; s < k.count(m); ++s)
    {
        if (cleared[s])
            continue;
        SparseVec zero;
        if (!red.insert(coboundary(k, m, s), {{static_cast<std::int64_t>(s), Rational(1)}}, &zero))
            cocycles.push_back(std::move(zero));
    }
    std::vector<SparseVec> coboundaries;
    for (std::size_t i = 0; i < cob.rank(); ++i)
        coboundaries.push_back(cob.vector(i));
    form.cohomology = HomologyBasis(cocycles, coboundaries);
    form.cocycles = form.cohomology.generators();
    std::size_t r = form.cocycles.size();

    std::vector<std::vector<Rational>> dense(r, std::vector<Rational>(k.count(m)));
    for (std::size_t i = 0; i < r; ++i)
        for (auto const& [idx, c] : form.cocycles[i])
            dense[i][static_cast<std::size_t>(idx)] = c;

    form.b = Matrix(r, r);
    std::vector<std::vector<std::pair<std::int64_t, Rational>>> caps(r);
    Simplex front(static_cast<std::size_t>(m) + 1), back(static_cast<std::size_t>(m) + 1);
    for (std::size_t t = 0; t < k.count(n); ++t)
    {
        auto s = k.simplices(n)[t];
        std::copy(s.begin(), s.begin() + m + 1, front.begin());
        std::copy(s.begin() + m, s.end(), back.begin());
        auto f = static_cast<std::size_t>(k.indexOf(front));
        auto b = static_cast<std::size_t>(k.indexOf(back));
        int eps = orientation.topSigns[t];
        for (std::size_t i = 0; i < r; ++i)
        {
            if (dense[i][f].isZero())
                continue;
            Rational a = eps > 0 ? dense[i][f] : -dense[i][f];
            caps[i].emplace_back(static_cast<std::int64_t>(b), a);
            for (std::size_t j = 0; j < r; ++j)
                if (!dense[j][b].isZero())
                    form.b(i, j) += a * dense[j][b];
        }
    }
    for (auto& c : caps)
        form.basis.push_back(makeSparse(std::move(c)));
    return form;
}

int signatureExact(Matrix const& b)
{
    if (b.rows() != b.cols() || !b.isSymmetric())
        throw Error(ErrorKind::NotSymmetric, "form is not symmetric");
    return inertia(b).signature();
}

void validateRep(GRep const& rep)
{
    auto const& g = rep.group;
    if (static_cast<int>(rep.matrices.size()) != g.order())
        throw Error(ErrorKind::BadRep, "one matrix per group element expected");
    std::size_t n = rep.matrices.empty() ? 0 : rep.matrices[0].rows();
    for (auto const& m : rep.matrices)
        if (m.rows() != n || m.cols() != n)
            throw Error(ErrorKind::BadRep, "matrices must be square of a common size");
    if (rep.matrices[static_cast<std::size_t>(g.identity())] != Matrix::identity(n))
        throw Error(ErrorKind::BadRep, "identity does not act trivially");
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            if (rep.matrices[static_cast<std::size_t>(g.mul(a, b))] !=
                rep.matrices[static_cast<std::size_t>(a)] * rep.matrices[static_cast<std::size_t>(b)])
                throw Error(ErrorKind::BadRep, "rho(" + g.label(a) + " " + g.label(b) + ") != rho(" + g.label(a) +
                                                   ") rho(" + g.label(b) + ")");
}

GRep repFromGenerators(FiniteGroup const& group, std::map<int, Matrix> const& generators)
{
    std::size_t n = generators.empty() ? 0 : generators.begin()->second.rows();
    for (auto const& [g, m] : generators)
    {
        if (g < 0 || g >= group.order())
            throw Error(ErrorKind::BadElement, "unknown element " + std::to_string(g));
        if (m.rows() != n || m.cols() != n)
            throw Error(ErrorKind::BadRep, "generator matrices must be square of a common size");
    }
    std::vector<std::optional<Matrix>> known(static_cast<std::size_t>(group.order()));
    known[static_cast<std::size_t>(group.identity())] = Matrix::identity(n);
    std::vector<int> queue{group.identity()};
    for (std::size_t q = 0; q < queue.size(); ++q)
    {
        int h = queue[q];
        for (auto const& [s, m] : generators)
        {
            int sh = group.mul(s, h);
            Matrix prod = m * *known[static_cast<std::size_t>(h)];
            auto& slot = known[static_cast<std::size_t>(sh)];
            if (!slot)
            {
                slot = std::move(prod);
                queue.push_back(sh);
            }
            else if (*slot != prod)
                throw Error(ErrorKind::BadRep, "generator matrices contradict the group relations");
        }
    }
    GRep rep{group, {}};
    for (auto& k : known)
    {
        if (!k)
            throw Error(ErrorKind::BadRep, "generators do not generate the group");
        rep.matrices.push_back(std::move(*k));
    }
    validateRep(rep);
    return rep;
}

GRep representationOnMiddle(GroupAction const& action, MiddleForm const& form)
{
    if (form.regime == FormRegime::External)
        throw Error(ErrorKind::BadRep, "external forms carry their own representation");
    std::size_t r = form.cocycles.size();
    GRep rep{action.group, {}};
    for (int g = 0; g < action.group.order(); ++g)
    {
        // (g^-1)^* on the cocycle basis, which is g_* on the dual cycles
        Matrix m(r, r);
        for (std::size_t j = 0; j < r; ++j)
        {
            auto c = form.cohomology.coordinates(actOnChain(action, g, form.degree, form.cocycles[j]));
            if (!c)
                throw Error(ErrorKind::InternalError, "image of a cocycle is not a cocycle");
            for (std::size_t i = 0; i < r; ++i)
                m(i, j) = (*c)[i];
        }
        rep.matrices.push_back(std::move(m));
    }
    return rep;
}

GSignatureValue gSignature(MiddleForm const& form, GRep const& rep, int g, GSignatureOptions const& opt)
{
    if (g < 0 || g >= rep.group.order())
        throw Error(ErrorKind::BadElement, "unknown element " + std::to_string(g));
    auto const& rho = rep.matrices[static_cast<std::size_t>(g)];
    auto const& b = form.b;
    std::size_t n = b.rows();
    if (rho.rows() != n || rho.cols() != n)
        throw Error(ErrorKind::BadRep, "representation and form have different sizes");
    if (rho.transpose() * b * rho != b)
        throw Error(ErrorKind::NotInvariant, "rho(" + rep.group.label(g) + ") does not preserve the form");
    bool even = form.parity == FormParity::Symmetric;

    GSignatureValue out;
    if (opt.allowExact && rep.group.elementOrder(g) <= 2 && rho * rho == Matrix::identity(n))
    {
        out.path = SignaturePath::Exact;
        int v = 0;
        if (even)
        {
            auto restricted = [&](Matrix const& p) { return signatureExact(p.transpose() * b * p); };
            Matrix id = Matrix::identity(n);
            v = restricted(nullSpace(rho - id)) - restricted(nullSpace(rho + id));
        }
        out.exact = v;
        out.re = v;
        return out;
    }

    out.path = SignaturePath::Numeric;
    out.errorBound = 1e-8;
    if (n == 0)
        return out;
    auto bd = toEigen(b);
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    if (opt.seed != 0)
    {
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Eigen::MatrixXd r(s.rows(), s.cols());
        for (Eigen::Index i = 0; i < r.rows(); ++i)
            for (Eigen::Index j = 0; j < r.cols(); ++j)
                r(i, j) = u(rng);
        s += r.transpose() * r;
    }
    // G-invariant inner product by averaging
    Eigen::MatrixXd inner = Eigen::MatrixXd::Zero(s.rows(), s.cols());
    for (auto const& h : rep.matrices)
    {
        auto hd = toEigen(h);
        inner += hd.transpose() * s * hd;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(inner);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorKind::InternalError, "averaged inner product is not positive definite");
    Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd linv = l.inverse();
    Eigen::MatrixXd bt = linv * bd * linv.transpose();
    Eigen::MatrixXd gt = l.transpose() * toEigen(rho) * linv.transpose();
    double scale = bt.norm();
    if (scale == 0.0)
        throw Error(ErrorKind::Degenerate, "form vanishes");

    if (even)
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es((bt + bt.transpose()) / 2);
        auto const& lam = es.eigenvalues();
        Eigen::VectorXd sgn(lam.size());
        for (Eigen::Index i = 0; i < lam.size(); ++i)
        {
            if (std::abs(lam(i)) < 1e-9 * scale)
                throw Error(ErrorKind::Degenerate, "form has a numerically zero eigenvalue");
            sgn(i) = lam(i) > 0 ? 1.0 : -1.0;
        }
        Eigen::MatrixXd q = es.eigenvectors();
        double v = (gt * q * sgn.asDiagonal() * q.transpose()).trace();
        double nearest = std::round(v);
        if (std::abs(v - nearest) < 1e-6)
        {
            out.snapped = v != nearest;
            v = nearest;
        }
        out.re = v;
    }
    else
    {
        Eigen::MatrixXd c = -(bt * bt);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es((c + c.transpose()) / 2);
        auto const& lam = es.eigenvalues();
        Eigen::VectorXd isq(lam.size());
        for (Eigen::Index i = 0; i < lam.size(); ++i)
        {
            if (lam(i) < (1e-9 * scale) * (1e-9 * scale))
                throw Error(ErrorKind::Degenerate, "skew form is numerically singular");
            isq(i) = 1.0 / std::sqrt(lam(i));
        }
        Eigen::MatrixXd q = es.eigenvectors();
        Eigen::MatrixXd j = bt * q * isq.asDiagonal() * q.transpose();
        double v = -(j * gt).trace();
        if (std::abs(v) < 1e-12)
            v = 0.0;
        out.im = v;
    }
    return out;
}

Matrix invariantSubspace(GRep const& rep)
{
    validateRep(rep);
    std::size_t n = rep.matrices[0].rows();
    Matrix stacked(0, n);
    for (auto const& m : rep.matrices)
        stacked = vconcat(stacked, m - Matrix::identity(n));
    return nullSpace(stacked);
}

bool traceFormulaHolds(GRep const& rep)
{
    Matrix inv = invariantSubspace(rep);
    Rational total;
    for (auto const& m : rep.matrices)
        total += m.trace();
    return total / Rational(rep.group.order()) == Rational(static_cast<std::int64_t>(inv.cols()));
}

GSignatureReport averagingCheck(GroupAction const& action, Orientation const& orientation,
                                AveragingOptions const& opt)
{
    auto preserving = isOrientationPreserving(action, orientation);
    for (int g = 0; g < action.group.order(); ++g)
        if (!preserving[static_cast<std::size_t>(g)])
            throw Error(ErrorKind::NotOriented, "element " + action.group.label(g) + " reverses orientation");

    GSignatureReport rep;
    auto form = cupFormMiddle(action.complex, orientation, opt.cup);
    auto rho = representationOnMiddle(action, form);
    validateRep(rho);
    rep.middleDegree = form.degree;
    rep.parity = form.parity;
    rep.traceFormula = traceFormulaHolds(rho);

    auto const& group = action.group;
    rep.elements.resize(static_cast<std::size_t>(group.order()));
    detail::parallelFor(opt.jobs, rep.elements.size(), [&](std::size_t g) {
        auto gi = static_cast<int>(g);
        rep.elements[g] = {gi, group.label(gi), gSignature(form, rho, gi)};
    });
    rep.signature = *rep.elements[static_cast<std::size_t>(group.identity())].value.exact;

    bool allExact = true;
    Rational sum;
    for (auto const& e : rep.elements)
    {
        rep.average += e.value.value();
        if (e.value.exact)
            sum += Rational(*e.value.exact);
        else
            allExact = false;
    }
    rep.average /= static_cast<double>(group.order());
    if (allExact)
        rep.averageExact = sum / Rational(group.order());
    for (auto const& cls : group.conjugacyClasses())
        for (int g : cls)
        {
            auto const& a = rep.elements[static_cast<std::size_t>(cls.front())].value;
            auto const& b = rep.elements[static_cast<std::size_t>(g)].value;
            bool same = (a.exact && b.exact) ? *a.exact == *b.exact
                                             : std::abs(a.value() - b.value()) < opt.tolerance;
            rep.conjugationInvariant = rep.conjugationInvariant && same;
        }

    // orbit side, independently of the representation
    auto reg = regularize(action, opt.maxSubdivisions);
    rep.subdivisions = reg.subdivisions;
    rep.regularityVerified = reg.verified;
    Orientation o = orientation;
    SimplicialComplex current = action.complex;
    for (int i = 0; i < reg.subdivisions; ++i)
    {
        auto sd = barycentricSubdivision(current);
        o = subdivideOrientation(o, sd);
        current = std::move(sd.complex);
    }
    if (!(current == reg.action.complex))
        throw Error(ErrorKind::InternalError, "subdivided complex differs from the regularized one");
    auto orbit = orbitComplex(reg.action);
    auto oy = orbitOrientation(reg.action, orbit, o);
    rep.orbitSimplices = orbit.quotient.totalSimplices();
    auto formY = cupFormMiddle(orbit.quotient, oy, opt.cup);
    rep.orbitRegime = formY.regime;
    rep.orbitSignature = formY.parity == FormParity::Symmetric ? signatureExact(formY.b) : 0;

    if (rep.averageExact)
        rep.pass = *rep.averageExact == Rational(rep.orbitSignature);
    else
        rep.pass = std::abs(rep.average - std::complex<double>(rep.orbitSignature, 0.0)) < opt.tolerance;
    rep.verdict = rep.pass ? "PASS" : "FAIL";
    return rep;
}

} // namespace ihorbit
