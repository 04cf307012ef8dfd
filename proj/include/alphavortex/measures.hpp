#pragma once

#include "alphavortex/kernels.hpp"
#include "alphavortex/vec2.hpp"

#include <string>
#include <vector>

namespace alphavortex::measures {

struct Box {
    Vec2 lo;
    Vec2 hi;

    bool contains(Vec2 p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
    }
    double area() const { return (hi.x - lo.x) * (hi.y - lo.y); }
};

/// Built-in analytic vorticity profiles.
///   uniform-disk: amplitude on |x - center| <= radius
///   smooth-bump:  amplitude * (1 - |x-center|^2/radius^2)_+^3
///   two-patch:    two smooth bumps at center +/- (separation/2, 0)
///   constant:     amplitude everywhere on the support box
struct Profile {
    enum class Type { UniformDisk, SmoothBump, TwoPatch, Constant };
    Type type = Type::UniformDisk;
    Vec2 center{0.0, 0.0};
    double radius = 1.0;
    double amplitude = 1.0;
    double separation = 0.0; // two-patch only

    double operator()(Vec2 p) const;
};

const char* profile_name(Profile::Type t);
Profile::Type profile_from_name(const std::string& name);

struct Atom {
    Vec2 pos;
    double mass = 0.0;
};

struct VorticitySpec {
    enum class Kind { AnalyticDensity, AtomList };
    Kind kind = Kind::AnalyticDensity;
    Profile density;          // AnalyticDensity only
    std::vector<Atom> atoms;  // AtomList only
    Box support_box{};
    bool nonnegative = true;
};

/// Analytic spec; nonnegativity follows from the profile amplitude.
VorticitySpec analytic_spec(const Profile& p, const Box& support);

/// Atom spec. Throws std::invalid_argument if the list is empty or an atom
/// lies outside the support box.
VorticitySpec atom_spec(std::vector<Atom> atoms, const Box& support);

/// Discrete vorticity measure sum m_i delta_{X_i(t)} plus the smoothing blob
/// that closes its velocity law.
struct ParticleSystem {
    std::vector<Vec2> positions;
    std::vector<double> masses;
    double time = 0.0;
    kernels::Blob blob;
    Vec2 origin_shift{0.0, 0.0}; // translation applied by recenter()

    std::size_t size() const { return positions.size(); }
    double total_mass() const;
    bool all_nonnegative() const;
};

/// Cover the support box with squares of side 1/n, integrate the density over
/// each square with a 4x4 tensor Gauss rule, and keep every square whose mass
/// is at least 1e-14 of the largest. Square centers become particle positions.
ParticleSystem discretize(const VorticitySpec& spec, int n, const kernels::Blob& blob);

/// Particle system holding exactly the spec's atoms at time 0.
ParticleSystem from_atoms(const VorticitySpec& spec, const kernels::Blob& blob);

/// Translate so the center of mass sits at the origin; the shift is recorded
/// in origin_shift (accumulating over repeated calls). Throws if total mass
/// is zero.
ParticleSystem recenter(const ParticleSystem& sys);

} // namespace alphavortex::measures
