#include "tonekit/structure.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

namespace tonekit {

RhythmGrid::RhythmGrid(double pulse, std::map<int, int> factors)
    : pulse_(pulse), factors_(std::move(factors)) {
    if (!(pulse_ > 0.0) || !std::isfinite(pulse_)) throw InvalidArgument("pulse must be > 0");
    for (const auto& [level, f] : factors_) {
        if (level == 0) throw InvalidArgument("level 0 is the pulse and takes no factor");
        if (f < 2) throw InvalidArgument("grid factors must be >= 2");
    }
}

int RhythmGrid::factor(int level) const {
    auto it = factors_.find(level);
    return it == factors_.end() ? 2 : it->second;
}

double RhythmGrid::unit_duration(int level) const {
    double d = pulse_;
    for (int l = -1; l >= level; --l) d /= factor(l);
    for (int l = 1; l <= level; ++l) d *= factor(l);
    return d;
}

Permutation::Permutation(std::vector<std::size_t> mapping) : map_(std::move(mapping)) {
    std::vector<bool> seen(map_.size(), false);
    for (std::size_t v : map_) {
        if (v >= map_.size() || seen[v]) throw InvalidArgument("mapping is not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
}

Permutation Permutation::from_cycles(std::string_view text, std::size_t n) {
    std::vector<std::vector<std::size_t>> cycles;
    std::size_t largest = 0;
    bool open = false;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw ParseError("cycle notation: " + why + " at column " + std::to_string(i + 1), 1, i + 1);
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
        } else if (c == '(') {
            if (open) fail("nested '('");
            open = true;
            cycles.emplace_back();
            ++i;
        } else if (c == ')') {
            if (!open) fail("unmatched ')'");
            open = false;
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            if (!open) fail("index outside parentheses");
            std::size_t v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                v = v * 10 + static_cast<std::size_t>(text[i++] - '0');
            cycles.back().push_back(v);
            largest = std::max(largest, v);
        } else {
            fail(std::string("unexpected '") + c + "'");
        }
    }
    if (open) fail("unclosed '('");
    if (n == 0) n = cycles.empty() ? 0 : largest + 1;
    if (!cycles.empty() && largest >= n) throw InvalidArgument("cycle index exceeds permutation size");

    auto m = identity(n).map_;
    std::set<std::size_t> used;
    for (const auto& cyc : cycles) {
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            if (!used.insert(cyc[k]).second) throw InvalidArgument("index repeated across cycles");
            m[cyc[k]] = cyc[(k + 1) % cyc.size()];
        }
    }
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    return Permutation(std::move(inv));
}

std::vector<std::vector<std::size_t>> Permutation::cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(map_.size(), false);
    for (std::size_t s = 0; s < map_.size(); ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> cyc;
        for (std::size_t i = s; !seen[i]; i = map_[i]) {
            seen[i] = true;
            cyc.push_back(i);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

Motif::Motif(std::vector<MotifEvent> events) : events_(std::move(events)) {
    for (std::size_t i = 0; i < events_.size(); ++i) {
        const auto& e = events_[i];
        if (!(e.frequency > 0.0) || !std::isfinite(e.frequency))
            throw InvalidArgument("motif event frequency must be > 0");
        if (!std::isfinite(e.onset) || !(e.duration >= 0.0) || !std::isfinite(e.duration) ||
            !std::isfinite(e.amplitude))
            throw InvalidArgument("motif event fields must be finite, duration >= 0");
        if (i > 0 && e.onset < events_[i - 1].onset)
            throw InvalidArgument("motif onsets must be non-decreasing");
    }
}

namespace structure {

double resolve_grid(const RhythmGrid& grid, const std::vector<GridAddress>& address) {
    if (address.empty()) return 0.0;
    std::set<int> levels;
    int outer = address.front().level;
    for (const auto& a : address) {
        if (!levels.insert(a.level).second)
            throw InvalidArgument("grid level " + std::to_string(a.level) + " repeated");
        outer = std::max(outer, a.level);
    }
    double onset = 0.0;
    for (const auto& a : address) {
        if (a.index < 0) throw InvalidArgument("grid index must be >= 0");
        if (a.level != outer) {
            // Units of this level inside one unit of the level above.
            const int per_parent = a.level < 0 ? grid.factor(a.level) : grid.factor(a.level + 1);
            if (a.index >= per_parent)
                throw InvalidArgument("grid index " + std::to_string(a.index) + " out of range at level " +
                                      std::to_string(a.level) + " (factor " + std::to_string(per_parent) + ")");
        }
        onset += static_cast<double>(a.index) * grid.unit_duration(a.level);
    }
    return onset;
}

double resolve_grid_ordinal(const RhythmGrid& grid, const std::vector<int>& levels,
                            const std::vector<long long>& ordinals) {
    if (levels.size() != ordinals.size()) throw InvalidArgument("levels and ordinals differ in length");
    std::vector<GridAddress> address;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (ordinals[i] < 1) throw InvalidArgument("grid ordinals start at 1");
        address.push_back({levels[i], ordinals[i] - 1});
    }
    return resolve_grid(grid, address);
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) throw InvalidArgument("cannot compose permutations of different sizes");
    std::vector<std::size_t> m(p.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = p[q[i]];
    return Permutation(std::move(m));
}

Permutation power(const Permutation& p, long long k) {
    Permutation base = k < 0 ? p.inverse() : p;
    unsigned long long e = static_cast<unsigned long long>(k < 0 ? -k : k);
    Permutation result = Permutation::identity(p.size());
    while (e > 0) {
        if (e & 1ULL) result = compose(result, base);
        base = compose(base, base);
        e >>= 1;
    }
    return result;
}

std::size_t order(const Permutation& p) {
    std::size_t o = 1;
    for (const auto& c : p.cycles()) o = std::lcm(o, c.size());
    return o;
}

std::vector<Permutation> hunt_peal_generators() {
    return {Permutation({1, 0, 2}), Permutation({0, 2, 1})};
}

Motif translate(const Motif& m, double seconds) {
    if (!std::isfinite(seconds)) throw InvalidArgument("translation must be finite");
    auto ev = m.events();
    for (auto& e : ev) e.onset += seconds;
    return Motif(std::move(ev));
}

Motif stretch(const Motif& m, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidArgument("stretch factor must be > 0");
    auto ev = m.events();
    if (ev.empty()) return m;
    const double start = ev.front().onset;
    for (auto& e : ev) {
        e.onset = start + factor * (e.onset - start);
        e.duration *= factor;
    }
    return Motif(std::move(ev));
}

Motif retrograde(const Motif& m) {
    auto ev = m.events();
    if (ev.empty()) return m;
    const double start = ev.front().onset;
    double end = start;
    for (const auto& e : ev) end = std::max(end, e.onset + e.duration);
    std::reverse(ev.begin(), ev.end());
    for (auto& e : ev) e.onset = start + (end - (e.onset + e.duration));
    std::stable_sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return a.onset < b.onset; });
    return Motif(std::move(ev));
}

Motif transpose(const Motif& m, double semitones) {
    if (!std::isfinite(semitones)) throw InvalidArgument("transposition must be finite");
    auto ev = m.events();
    const double k = std::exp2(semitones / 12.0);
    for (auto& e : ev) e.frequency *= k;
    return Motif(std::move(ev));
}

Motif invert_strict(const Motif& m) {
    auto ev = m.events();
    if (ev.empty()) return m;
    const double f0 = ev.front().frequency;
    for (auto& e : ev) e.frequency = f0 * (f0 / e.frequency);
    return Motif(std::move(ev));
}

Motif invert_tonal(const Motif& m, const Scale& scale, double tonic_hz) {
    if (!(tonic_hz > 0.0)) throw InvalidArgument("tonic must be > 0");
    if (scale.contour()) throw InvalidArgument("tonal inversion needs an ascending scale");
    const auto& off = scale.offsets();
    if (off.back() >= 12.0) throw InvalidArgument("tonal inversion needs a scale within one octave");
    const auto n = static_cast<long long>(off.size());

    auto ev = m.events();
    for (auto& e : ev) {
        const double semis = 12.0 * std::log2(e.frequency / tonic_hz);
        long long octave = static_cast<long long>(std::floor(semis / 12.0 + 1e-9));
        double rem = semis - 12.0 * static_cast<double>(octave);
        long long idx = -1;
        for (long long j = 0; j < n; ++j)
            if (std::fabs(off[static_cast<std::size_t>(j)] - rem) < 1e-6) idx = j;
        if (idx < 0 && std::fabs(rem - 12.0) < 1e-6) {
            idx = 0;
            ++octave;
        }
        if (idx < 0)
            throw InvalidArgument("pitch " + std::to_string(e.frequency) + " Hz is not on scale '" +
                                  scale.name() + "'");
        const long long mirrored = -(octave * n + idx);
        const long long o2 = mirrored >= 0 ? mirrored / n : -((n - 1 - mirrored) / n);
        const long long j2 = mirrored - o2 * n;
        e.frequency = tonic_hz * std::exp2((off[static_cast<std::size_t>(j2)] + 12.0 * static_cast<double>(o2)) / 12.0);
    }
    return Motif(std::move(ev));
}

Motif rotate(const Motif& m, long long positions) {
    auto ev = m.events();
    const auto h = static_cast<long long>(ev.size());
    if (h == 0) return m;
    const long long shift = ((positions % h) + h) % h;
    // Content moves through fixed onset slots.
    auto src = ev;
    for (long long n = 0; n < h; ++n) {
        const auto& from = src[static_cast<std::size_t>((n + shift) % h)];
        auto& to = ev[static_cast<std::size_t>(n)];
        to.frequency = from.frequency;
        to.duration = from.duration;
        to.amplitude = from.amplitude;
    }
    return Motif(std::move(ev));
}

Motif transform_motif(const Motif& m, const MotifTransform& t) {
    return std::visit(
        [&m](const auto& p) -> Motif {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, transform::Translation>) return translate(m, p.seconds);
            else if constexpr (std::is_same_v<T, transform::Stretch>) return stretch(m, p.factor);
            else if constexpr (std::is_same_v<T, transform::Retrograde>) return retrograde(m);
            else if constexpr (std::is_same_v<T, transform::Transposition>) return transpose(m, p.semitones);
            else if constexpr (std::is_same_v<T, transform::StrictInversion>) return invert_strict(m);
            else if constexpr (std::is_same_v<T, transform::TonalInversion>) return invert_tonal(m, p.scale, p.tonic_hz);
            else return rotate(m, p.positions);
        },
        t);
}

Motif apply_to_dimension(const Motif& m, const Permutation& p, MotifDimension dim) {
    if (p.size() > m.size()) throw InvalidArgument("permutation longer than the motif");
    auto ev = m.events();
    const auto& src = m.events();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& from = src[p[i]];
        switch (dim) {
        case MotifDimension::pitch: ev[i].frequency = from.frequency; break;
        case MotifDimension::duration: ev[i].duration = from.duration; break;
        case MotifDimension::amplitude: ev[i].amplitude = from.amplitude; break;
        }
    }
    return Motif(std::move(ev));
}

std::vector<double> lucas_sequence(double x0, double x1, std::size_t n) {
    if (n < 2) throw InvalidArgument("lucas_sequence needs n >= 2");
    if (!std::isfinite(x0) || !std::isfinite(x1)) throw InvalidArgument("seeds must be finite");
    std::vector<double> x{x0, x1};
    while (x.size() < n) x.push_back(x[x.size() - 1] + x[x.size() - 2]);
    return x;
}

std::vector<double> golden_ratio_errors(double x0, double x1, std::size_t count) {
    const auto x = lucas_sequence(x0, x1, count + 1);
    std::vector<double> e;
    for (std::size_t k = 1; k <= count; ++k) {
        if (x[k - 1] == 0.0) throw DegenerateSignal("ratio undefined: zero term");
        e.push_back(100.0 * (x[k] / x[k - 1]) / std::numbers::phi - 100.0);
    }
    return e;
}

} // namespace structure
} // namespace tonekit
