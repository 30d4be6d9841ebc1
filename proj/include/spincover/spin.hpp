#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spincover/pauli.hpp"

namespace spincover {

/// Connected component of O(p,q), decided by the signs of the leading p x p
/// and trailing q x q minors (an empty block has minor 1).
enum class ComponentTag { SO_up_down, O_up_prime, O_down_prime, SO_prime };

enum class SpinGroup { Pin, Spin, Pin_up, Pin_down, Spin_up_down };

/// Connected component of Pin(p,q).
enum class SpinComponent { Spin_up_down, Pin_up_prime, Pin_down_prime, Spin_prime };

enum class NormType { plus_e, minus_e };  // the sign in rev(T) T = +-e

std::string to_string(ComponentTag tag);
std::string to_string(SpinGroup g);
std::string to_string(SpinComponent c);
std::string to_string(NormType t);

/// The spinor component that covers each matrix component.
SpinComponent paired_component(ComponentTag tag);

/// Element of O(p,q), stored as the matrix of the transformation in the
/// generator basis: column a holds the coordinates of the image of e^a.
class OrthogonalMatrix {
public:
    OrthogonalMatrix(Signature sig, Eigen::MatrixXd entries, double tol = eps_rel);

    const Signature& sig() const { return sig_; }
    const Eigen::MatrixXd& entries() const { return entries_; }
    double orthogonality_residual() const { return residual_; }

private:
    Signature sig_;
    Eigen::MatrixXd entries_;
    double residual_;
};

ComponentTag classify_orthogonal(const OrthogonalMatrix& m);

/// Matrix of the twisted conjugation x -> T^ x T^{-1} on grade 1; throws
/// NotLipschitzError when any image fails to be a real grade-1 element.
OrthogonalMatrix project(const Multivector& t);

/// Scales T so that rev(T) T = +-e exactly classified, then fixes the sign so
/// the first nonzero coefficient (increasing mask order) is positive.
std::pair<Multivector, NormType> normalize(const Multivector& t);

struct Membership {
    std::set<SpinGroup> groups;
    SpinComponent component;
    NormType tilde;      // sign of rev(T) T
    NormType tilde_hat;  // sign of (rev T)^ T
    Parity parity;
};

/// Group memberships of a normalized element; throws NotInPinError when the
/// parity, the norm or the grade-1 preservation conditions fail.
Membership membership(const Multivector& t);

struct LiftResult {
    Multivector T_plus;  // canonical representative; the other preimage is -T_plus
    NormType norm_type;
    Membership groups;
    ComponentTag component;
    double residual;  // max |project(T_plus) - P|

    Multivector t_minus() const { return scale(T_plus, -1.0); }
};

/// The two spinor-group elements +-T covering P, with classification.
LiftResult lift(const OrthogonalMatrix& p);

/// Product of unit vectors; vectors() must be nonempty grade-1 elements.
Multivector versor_from_vectors(const std::vector<Multivector>& vectors);

/// Deterministic product of k pseudo-random non-null unit vectors.
Multivector random_versor(const Signature& sig, int k, std::uint64_t seed);

}  // namespace spincover
