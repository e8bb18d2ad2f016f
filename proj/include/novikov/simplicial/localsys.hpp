#pragma once

#include "novikov/ce/twisted.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace novikov {

/// Invalid complex, cocycle or cover request.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Simplex = std::vector<int>;  ///< strictly increasing vertex indices

/// Finite simplicial complex, closed under faces, dimension at most 3.
class SimplicialComplex {
public:
    static constexpr int kMaxDim = 3;

    SimplicialComplex() = default;
    /// Closes the given simplices under taking faces. Vertices not in any simplex are 0-simplices.
    SimplicialComplex(std::vector<std::string> labels, const std::vector<Simplex>& simplices);

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t vertex_count() const { return labels_.size(); }
    int dim() const { return static_cast<int>(cells_.size()) - 1; }
    const std::vector<Simplex>& cells(int k) const;
    std::size_t count(int k) const { return k < 0 || k > dim() ? 0 : cells_[k].size(); }
    /// Index of a simplex within its dimension, or -1.
    long index(const Simplex& s) const;
    long euler() const;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<Simplex>> cells_;
    std::vector<std::map<Simplex, std::size_t>> index_;
};

/// Integer value a(u,v) on oriented edges; a(v,u) = -a(u,v).
class IntegerCocycle {
public:
    IntegerCocycle() = default;
    /// Missing edges are 0. Checks a(v0v1) + a(v1v2) = a(v0v2) on every triangle.
    IntegerCocycle(const SimplicialComplex& k, std::map<std::pair<int, int>, long> values);

    long operator()(int u, int v) const;
    /// Values on the edges of k in their listed order.
    std::vector<long> on_edges(const SimplicialComplex& k) const;
    /// a + delta f for an integer 0-cochain f.
    IntegerCocycle gauge(const SimplicialComplex& k, const std::vector<long>& f) const;

private:
    std::map<std::pair<int, int>, long> values_;  // keys with u < v
};

/// Coboundaries delta^k : C^k -> C^{k+1} over Laurent polynomials, k = 0 .. dim-1.
struct TwistedCochainComplex {
    std::vector<std::size_t> dims;
    std::vector<Matrix<LaurentPoly>> delta;

    /// delta^k, or the empty map at the ends.
    Matrix<LaurentPoly> coboundary(int k) const;
};

/// (delta c)(v0..v_{k+1}) = t^{a(v0 v1)} c(v1..v_{k+1}) + sum_{i>=1} (-1)^i c(v0..^vi..v_{k+1}).
TwistedCochainComplex build_twisted_complex(const SimplicialComplex& k, const IntegerCocycle& a);

BettiProfile betti_generic(const SimplicialComplex& k, const IntegerCocycle& a);
/// Throws SpecializationError for t0 = 0.
BettiProfile betti_at(const SimplicialComplex& k, const IntegerCocycle& a, const Rational& t0);

JumpSet jumping_locus(const SimplicialComplex& k, const IntegerCocycle& a, int degree);

struct CyclicCover {
    SimplicialComplex complex;
    IntegerCocycle cocycle;
    std::vector<int> projection;  ///< cover vertex -> base vertex
    int fold = 0;
};

/// m-fold cyclic cover classified by a mod m. Vertex (v, s) has index v * m + s.
CyclicCover cyclic_cover(const SimplicialComplex& k, const IntegerCocycle& a, int m);

/// Matrix of p^* : C^k(base) -> C^k(cover), constant on fibres.
Matrix<Rational> pullback_matrix(const SimplicialComplex& base, const CyclicCover& cover, int k);

struct InjectivityVerdict {
    std::size_t source_dim = 0;  ///< b_k(base, t0)
    std::size_t target_dim = 0;  ///< b_k(cover, t0)
    std::size_t image_dim = 0;
    bool injective() const { return image_dim == source_dim; }
};

InjectivityVerdict pullback_injectivity_check(const SimplicialComplex& k, const IntegerCocycle& a, int m,
                                              const Rational& t0, int degree);

struct EulerVerdict {
    long cell_euler = 0;
    long generic_euler = 0;
    std::vector<std::pair<Rational, long>> specialized;
    bool ok() const;
};

EulerVerdict euler_check(const SimplicialComplex& k, const IntegerCocycle& a, const std::vector<Rational>& at);

struct ComplexText {
    SimplicialComplex complex;
    IntegerCocycle cocycle;
};

/// Format: `v a b c ...` (vertex labels), `s a b c` (simplex, faces implied),
/// `w a b = n` (cocycle value on the edge a -> b; unlisted edges are 0), `#` comments.
ComplexText parse_complex_text(const std::string& text);

}  // namespace novikov
