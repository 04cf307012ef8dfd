#include "alphavortex/measures.hpp"

#include "alphavortex/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace alphavortex::measures {

double Profile::operator()(Vec2 p) const {
    switch (type) {
        case Type::UniformDisk: {
            const Vec2 d = p - center;
            return d.norm2() <= radius * radius ? amplitude : 0.0;
        }
        case Type::SmoothBump: {
            const Vec2 d = p - center;
            const double s = 1.0 - d.norm2() / (radius * radius);
            return s > 0.0 ? amplitude * s * s * s : 0.0;
        }
        case Type::TwoPatch: {
            Profile bump{Type::SmoothBump, center, radius, amplitude, 0.0};
            const Vec2 off{0.5 * separation, 0.0};
            bump.center = center - off;
            const double left = bump(p);
            bump.center = center + off;
            return left + bump(p);
        }
        case Type::Constant:
            return amplitude;
    }
    throw std::logic_error("Profile: bad type");
}

const char* profile_name(Profile::Type t) {
    switch (t) {
        case Profile::Type::UniformDisk: return "uniform-disk";
        case Profile::Type::SmoothBump: return "smooth-bump";
        case Profile::Type::TwoPatch: return "two-patch";
        case Profile::Type::Constant: return "constant";
    }
    return "?";
}

Profile::Type profile_from_name(const std::string& name) {
    if (name == "uniform-disk") return Profile::Type::UniformDisk;
    if (name == "smooth-bump") return Profile::Type::SmoothBump;
    if (name == "two-patch") return Profile::Type::TwoPatch;
    if (name == "constant") return Profile::Type::Constant;
    throw std::invalid_argument("unknown profile '" + name + "'");
}

VorticitySpec analytic_spec(const Profile& p, const Box& support) {
    if (!(support.area() > 0.0))
        throw std::invalid_argument("analytic_spec: support box must have positive area");
    VorticitySpec spec;
    spec.kind = VorticitySpec::Kind::AnalyticDensity;
    spec.density = p;
    spec.support_box = support;
    spec.nonnegative = p.amplitude >= 0.0;
    return spec;
}

VorticitySpec atom_spec(std::vector<Atom> atoms, const Box& support) {
    if (atoms.empty()) throw std::invalid_argument("atom_spec: empty atom list");
    if (!(support.area() > 0.0))
        throw std::invalid_argument("atom_spec: support box must have positive area");
    bool nonneg = true;
    for (const Atom& a : atoms) {
        if (!support.contains(a.pos))
            throw std::invalid_argument("atom_spec: atom outside the support box");
        if (!std::isfinite(a.mass) || !finite(a.pos))
            throw std::invalid_argument("atom_spec: non-finite atom");
        nonneg = nonneg && a.mass >= 0.0;
    }
    VorticitySpec spec;
    spec.kind = VorticitySpec::Kind::AtomList;
    spec.atoms = std::move(atoms);
    spec.support_box = support;
    spec.nonnegative = nonneg;
    return spec;
}

double ParticleSystem::total_mass() const {
    double sum = 0.0;
    for (double m : masses) sum += m;
    return sum;
}

bool ParticleSystem::all_nonnegative() const {
    for (double m : masses)
        if (m < 0.0) return false;
    return true;
}

ParticleSystem discretize(const VorticitySpec& spec, int n, const kernels::Blob& blob) {
    if (spec.kind != VorticitySpec::Kind::AnalyticDensity)
        throw std::invalid_argument("discretize: spec must carry an analytic density");
    if (n < 1) throw std::invalid_argument("discretize: n must be >= 1");

    const Box& box = spec.support_box;
    const double h = 1.0 / n;
    const int nx = static_cast<int>(std::ceil((box.hi.x - box.lo.x) * n - 1e-12));
    const int ny = static_cast<int>(std::ceil((box.hi.y - box.lo.y) * n - 1e-12));

    const auto& rule = quadrature::gauss_legendre(4);

    ParticleSystem sys;
    sys.blob = blob;
    sys.positions.reserve(static_cast<std::size_t>(nx) * ny / 2);
    sys.masses.reserve(sys.positions.capacity());

    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const double cx = box.lo.x + (ix + 0.5) * h;
            const double cy = box.lo.y + (iy + 0.5) * h;
            double m = 0.0;
            for (int a = 0; a < 4; ++a) {
                const double px = cx + 0.5 * h * rule.nodes[a];
                double row = 0.0;
                for (int b = 0; b < 4; ++b) {
                    const double py = cy + 0.5 * h * rule.nodes[b];
                    row += rule.weights[b] * spec.density({px, py});
                }
                m += rule.weights[a] * row;
            }
            m *= 0.25 * h * h;
            if (!std::isfinite(m))
                throw std::runtime_error("discretize: quadrature failure (non-integrable density)");
            if (m != 0.0) {
                sys.positions.push_back({cx, cy});
                sys.masses.push_back(m);
            }
        }
    }

    // Drop squares carrying negligible circulation.
    double max_abs = 0.0;
    for (double m : sys.masses) max_abs = std::max(max_abs, std::abs(m));
    const double threshold = 1e-14 * max_abs;
    std::size_t keep = 0;
    for (std::size_t i = 0; i < sys.masses.size(); ++i) {
        if (std::abs(sys.masses[i]) >= threshold) {
            sys.positions[keep] = sys.positions[i];
            sys.masses[keep] = sys.masses[i];
            ++keep;
        }
    }
    sys.positions.resize(keep);
    sys.masses.resize(keep);

    if (sys.positions.empty())
        throw std::runtime_error("discretize: density vanishes on the support box");
    return sys;
}

ParticleSystem from_atoms(const VorticitySpec& spec, const kernels::Blob& blob) {
    if (spec.kind != VorticitySpec::Kind::AtomList)
        throw std::invalid_argument("from_atoms: spec must carry an atom list");
    if (spec.atoms.empty()) throw std::invalid_argument("from_atoms: empty atom list");
    ParticleSystem sys;
    sys.blob = blob;
    sys.positions.reserve(spec.atoms.size());
    sys.masses.reserve(spec.atoms.size());
    for (const Atom& a : spec.atoms) {
        sys.positions.push_back(a.pos);
        sys.masses.push_back(a.mass);
    }
    return sys;
}

ParticleSystem recenter(const ParticleSystem& sys) {
    const double m0 = sys.total_mass();
    if (m0 == 0.0)
        throw std::domain_error("recenter: center of mass undefined for zero total mass");
    Vec2 z{0.0, 0.0};
    for (std::size_t i = 0; i < sys.size(); ++i) z += sys.masses[i] * sys.positions[i];
    const Vec2 shift{z.x / m0, z.y / m0};
    ParticleSystem out = sys;
    for (Vec2& p : out.positions) p -= shift;
    out.origin_shift += shift;
    return out;
}

} // namespace alphavortex::measures
