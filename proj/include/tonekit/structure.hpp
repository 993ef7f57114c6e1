#pragma once

#include <cstddef>
#include <map>
#include <string_view>
#include <variant>
#include <vector>

#include "tonekit/error.hpp"
#include "tonekit/theory.hpp"

namespace tonekit {

// Level 0 is the pulse, negative levels subdivide it, positive levels group it.
class RhythmGrid {
public:
    explicit RhythmGrid(double pulse, std::map<int, int> factors = {});

    double pulse() const noexcept { return pulse_; }
    // Missing levels default to 2.
    int factor(int level) const;
    double unit_duration(int level) const;

private:
    double pulse_;
    std::map<int, int> factors_;
};

// One coordinate of a grid address; `index` counts from 0.
struct GridAddress {
    int level;
    long long index;
};

class Permutation {
public:
    explicit Permutation(std::vector<std::size_t> mapping);
    static Permutation identity(std::size_t n);
    // "(0 1 2)(3 4)" or "(1,2,5)(3,4)"; n defaults to the largest index + 1.
    static Permutation from_cycles(std::string_view text, std::size_t n = 0);

    std::size_t size() const noexcept { return map_.size(); }
    std::size_t operator[](std::size_t i) const { return map_[i]; }
    const std::vector<std::size_t>& mapping() const noexcept { return map_; }
    Permutation inverse() const;
    std::vector<std::vector<std::size_t>> cycles() const;

    // Reorders a sequence: result[i] = seq[p[i]].
    template <class T>
    std::vector<T> apply(const std::vector<T>& seq) const {
        if (seq.size() != map_.size()) throw InvalidArgument("permutation size differs from sequence");
        std::vector<T> out;
        out.reserve(seq.size());
        for (std::size_t i : map_) out.push_back(seq[i]);
        return out;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> map_;
};

struct MotifEvent {
    double frequency;   // Hz
    double onset;       // seconds
    double duration;    // seconds
    double amplitude;
    friend bool operator==(const MotifEvent&, const MotifEvent&) = default;
};

class Motif {
public:
    Motif() = default;
    explicit Motif(std::vector<MotifEvent> events);

    const std::vector<MotifEvent>& events() const noexcept { return events_; }
    std::size_t size() const noexcept { return events_.size(); }
    const MotifEvent& operator[](std::size_t i) const { return events_[i]; }

    friend bool operator==(const Motif&, const Motif&) = default;

private:
    std::vector<MotifEvent> events_;
};

enum class MotifDimension { pitch, duration, amplitude };

namespace transform {
struct Translation { double seconds; };
struct Stretch { double factor; };
struct Retrograde {};
struct Transposition { double semitones; };
struct StrictInversion {};
struct TonalInversion { Scale scale; double tonic_hz; };
struct Rotation { long long positions; };
} // namespace transform

using MotifTransform =
    std::variant<transform::Translation, transform::Stretch, transform::Retrograde,
                 transform::Transposition, transform::StrictInversion, transform::TonalInversion,
                 transform::Rotation>;

namespace structure {

double resolve_grid(const RhythmGrid& grid, const std::vector<GridAddress>& address);
// Same address written with 1-based ordinals per level.
double resolve_grid_ordinal(const RhythmGrid& grid, const std::vector<int>& levels,
                            const std::vector<long long>& ordinals);

Permutation compose(const Permutation& p, const Permutation& q);
Permutation power(const Permutation& p, long long k);
std::size_t order(const Permutation& p);

template <class T>
std::vector<std::vector<T>> cycle_sequence(const std::vector<Permutation>& generators,
                                           const std::vector<T>& seed) {
    if (generators.empty()) throw InvalidArgument("cycle_sequence needs at least one permutation");
    std::vector<std::vector<T>> rows{seed};
    std::size_t g = 0;
    do {
        rows.push_back(generators[g].apply(rows.back()));
        g = (g + 1) % generators.size();
    } while (rows.back() != seed);
    return rows;
}

template <class T>
std::vector<std::vector<T>> cycle_sequence(const Permutation& p, const std::vector<T>& seed) {
    return cycle_sequence(std::vector<Permutation>{p}, seed);
}

// Swap-first-two and swap-last-two, alternating.
std::vector<Permutation> hunt_peal_generators();

Motif transform_motif(const Motif& m, const MotifTransform& t);
Motif translate(const Motif& m, double seconds);
Motif stretch(const Motif& m, double factor);
Motif retrograde(const Motif& m);
Motif transpose(const Motif& m, double semitones);
Motif invert_strict(const Motif& m);
// Reflects scale positions about the tonic; pitches must lie on the scale.
Motif invert_tonal(const Motif& m, const Scale& scale, double tonic_hz);
Motif rotate(const Motif& m, long long positions);

Motif apply_to_dimension(const Motif& m, const Permutation& p, MotifDimension dim);

std::vector<double> lucas_sequence(double x0, double x1, std::size_t n);
// 100 (x_k / x_{k-1}) / phi - 100 for k = 1..count.
std::vector<double> golden_ratio_errors(double x0, double x1, std::size_t count);

} // namespace structure
} // namespace tonekit
