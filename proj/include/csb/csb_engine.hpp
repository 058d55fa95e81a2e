#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csb/functor.hpp"

namespace csb {

/// A pair of embeddings F: X -> Y and G: Y -> X. Construction validates both
/// groupoids and functors and rejects non-embeddings with HypothesisError.
class CsbProblem {
public:
    CsbProblem(GroupoidPtr x, GroupoidPtr y, Functor f, Functor g);

    const Groupoid& x() const { return *x_; }
    const Groupoid& y() const { return *y_; }
    const GroupoidPtr& x_ptr() const { return x_; }
    const GroupoidPtr& y_ptr() const { return y_; }
    const Functor& f() const { return f_; }
    const Functor& g() const { return g_; }
    const IsoClassPartition& x_classes() const { return x_classes_; }
    const IsoClassPartition& y_classes() const { return y_classes_; }
    const HomInverter& g_inverter() const { return g_inverter_; }

private:
    GroupoidPtr x_;
    GroupoidPtr y_;
    Functor f_;
    Functor g_;
    IsoClassPartition x_classes_;
    IsoClassPartition y_classes_;
    HomInverter g_inverter_;
};

enum class Branch { GInverse, F };

const char* to_string(Branch b);

/// y with a morphism p: G(y) -> x.
struct GInverseWitness {
    ObjectIndex y;
    MorphismIndex p;
};

/// class_map^steps(root_class) is the class in question, and no object of Y
/// lands in root_class under G.
struct FPointWitness {
    ClassIndex root_class;
    std::size_t steps;
};

struct GPointEntry {
    ClassIndex cls;
    bool g_point;
    std::optional<GInverseWitness> g_inverse;  ///< at the class representative
    std::optional<FPointWitness> f_point;
    /// Backward orbit classes visited while deciding, nearest first.
    std::vector<ClassIndex> visited;
};

using GPointTable = std::vector<GPointEntry>;

/// Endofunction on the classes of X induced by G . F.
std::vector<ClassIndex> class_map(const CsbProblem& problem);

/// Per-class g-point decision by backward reachability under class_map.
GPointTable g_point_table(const CsbProblem& problem);

/// Decision and witness for the class of x.
GPointEntry is_g_point(const CsbProblem& problem, ObjectIndex x);

/// Smallest y, then smallest p: G(y) -> x. Throws PreconditionError when x is
/// not a g-point.
GInverseWitness g_inverse_witness(const CsbProblem& problem, ObjectIndex x);

/// The equivalence candidate h: X -> Y. Throws ConstructionError if the
/// fully faithful inversion of G fails for some morphism.
Functor construct_h(const CsbProblem& problem);

/// x with an iso h(x) -> y.
struct SplitWitness {
    ObjectIndex y;
    ObjectIndex x;
    MorphismIndex iso;
    Branch branch;
};

/// Throws CertificateError if no witness exists.
SplitWitness split_surjection_witness(const CsbProblem& problem, const Functor& h, ObjectIndex y);

struct CertificateCheck {
    std::string name;
    bool passed;
    std::string detail;
};

/// A proposition the construction decides by case analysis.
struct ExcludedMiddleSite {
    std::string kind;   ///< "g-point", "g-fiber", or "f-fiber-subtype"
    std::size_t index;  ///< class of X, object of X, or object of Y respectively
    bool decided;
};

struct CsbCertificate {
    Functor h;
    GPointTable g_points;
    std::vector<Branch> class_branch;  ///< per class of X
    std::vector<SplitWitness> split;   ///< per object of Y
    std::optional<EquivalenceWitness> equivalence;
    std::vector<ClassIndex> g_inverse_image_classes;  ///< classes of Y
    std::vector<ClassIndex> f_image_classes;
    std::vector<CertificateCheck> checks;
    std::vector<ExcludedMiddleSite> excluded_middle_sites;
    bool valid = false;

    const CertificateCheck* failed_check() const;
};

CsbCertificate verify_csb(const CsbProblem& problem);

}  // namespace csb
