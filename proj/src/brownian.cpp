#include "cbrng/brownian.hpp"

#include <algorithm>
#include <barrier>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "cbrng/distributions.hpp"
#include "cbrng/generator.hpp"

namespace cbrng::brownian {

void SimConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be > 0");
    if (!(gamma >= 0.0)) throw std::invalid_argument("SimConfig: gamma must be >= 0");
    if (!(mass > 0.0)) throw std::invalid_argument("SimConfig: mass must be > 0");
    if (threads == 0) throw std::invalid_argument("SimConfig: threads must be >= 1");
}

std::string TrajectoryChecksum::hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

namespace {

void fold(std::uint64_t& h, std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
        h ^= (word >> (8 * i)) & 0xFFu;
        h *= kFnvPrime;
    }
}

template <typename Engine>
void step_range(std::span<Particle> particles, std::uint32_t iteration, const SimConfig& cfg) {
    const double drag = cfg.gamma / cfg.mass;
    const double dt = cfg.dt;
    const double sqrt_dt = std::sqrt(dt);
    for (auto& p : particles) {
        p.vx -= drag * p.vx * dt;
        p.vy -= drag * p.vy * dt;

        Engine rng(p.pid, iteration);
        const Double2 r = draw_double2(rng);
        p.vx += (r.x * 2.0 - 1.0) * sqrt_dt;
        p.vy += (r.y * 2.0 - 1.0) * sqrt_dt;

        p.x += p.vx * dt;
        p.y += p.vy * dt;
    }
}

}  // namespace

TrajectoryChecksum checksum(std::span<const Particle> particles) {
    std::uint64_t h = kFnvOffsetBasis;
    for (std::size_t i = 0; i < particles.size(); ++i) {
        const Particle& p = particles[i];
        if (i > 0 && particles[i - 1].pid >= p.pid) {
            throw std::invalid_argument("checksum: particles must be sorted by strictly increasing pid");
        }
        fold(h, p.pid);
        fold(h, std::bit_cast<std::uint64_t>(p.x));
        fold(h, std::bit_cast<std::uint64_t>(p.y));
        fold(h, std::bit_cast<std::uint64_t>(p.vx));
        fold(h, std::bit_cast<std::uint64_t>(p.vy));
    }
    return {h};
}

std::vector<Particle> init_particles(const SimConfig& cfg) {
    std::vector<Particle> particles(cfg.n_particles);
    with_engine(cfg.algorithm, [&]<typename E>(std::type_identity<E>) {
        for (std::size_t i = 0; i < particles.size(); ++i) {
            Particle& p = particles[i];
            p.pid = i;
            E rng(p.pid, cfg.init_counter);
            const Double2 pos = draw_double2(rng);
            const Double2 vel = draw_double2(rng);
            p.x = pos.x;
            p.y = pos.y;
            p.vx = vel.x * 2.0 - 1.0;
            p.vy = vel.y * 2.0 - 1.0;
        }
    });
    return particles;
}

void apply_forces_step(std::span<Particle> particles, std::uint32_t iteration, const SimConfig& cfg) {
    with_engine(cfg.algorithm,
                [&]<typename E>(std::type_identity<E>) { step_range<E>(particles, iteration, cfg); });
}

void advance(std::span<Particle> particles, std::uint32_t first_iteration, std::uint32_t steps,
             const SimConfig& cfg) {
    cfg.validate();
    const std::size_t workers = std::clamp<std::size_t>(cfg.threads, 1, std::max<std::size_t>(1, particles.size()));
    if (workers == 1) {
        for (std::uint32_t s = 0; s < steps; ++s) apply_forces_step(particles, first_iteration + s, cfg);
        return;
    }

    std::barrier sync(static_cast<std::ptrdiff_t>(workers));
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = particles.size() * w / workers;
        const std::size_t end = particles.size() * (w + 1) / workers;
        pool.emplace_back([&, range = particles.subspan(begin, end - begin)] {
            for (std::uint32_t s = 0; s < steps; ++s) {
                apply_forces_step(range, first_iteration + s, cfg);
                sync.arrive_and_wait();
            }
        });
    }
}

namespace {

SimResult finish(std::vector<Particle> particles, std::chrono::duration<double> elapsed, std::uint64_t work) {
    SimResult result;
    result.checksum = checksum(particles);
    result.particles = std::move(particles);
    result.wall_time = elapsed;
    result.particle_steps_per_second = elapsed.count() > 0.0 ? static_cast<double>(work) / elapsed.count() : 0.0;
    return result;
}

}  // namespace

SimResult run_sim(const SimConfig& cfg) {
    cfg.validate();
    auto particles = init_particles(cfg);
    const auto start = std::chrono::steady_clock::now();
    advance(particles, 1, cfg.steps, cfg);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    return finish(std::move(particles), elapsed, std::uint64_t{cfg.steps} * cfg.n_particles);
}

SimResult resume_sim(Snapshot snapshot, const SimConfig& cfg) {
    cfg.validate();
    if (snapshot.completed_steps > cfg.steps) {
        throw std::invalid_argument("resume_sim: snapshot is past the requested step count");
    }
    const std::uint32_t remaining = cfg.steps - snapshot.completed_steps;
    const auto start = std::chrono::steady_clock::now();
    advance(snapshot.particles, snapshot.completed_steps + 1, remaining, cfg);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    const std::uint64_t work = std::uint64_t{remaining} * snapshot.particles.size();
    return finish(std::move(snapshot.particles), elapsed, work);
}

namespace {

constexpr char kSnapshotMagic[8] = {'B', 'D', 'S', 'N', 'A', 'P', '0', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
    os.write(b, 8);
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("snapshot: truncated file");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

}  // namespace

void write_snapshot(std::ostream& os, const Snapshot& snap) {
    os.write(kSnapshotMagic, sizeof kSnapshotMagic);
    const std::uint32_t steps = snap.completed_steps;
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((steps >> (8 * i)) & 0xFFu);
    os.write(b, 4);
    put_u64(os, snap.particles.size());
    for (const auto& p : snap.particles) {
        put_u64(os, p.pid);
        put_u64(os, std::bit_cast<std::uint64_t>(p.x));
        put_u64(os, std::bit_cast<std::uint64_t>(p.y));
        put_u64(os, std::bit_cast<std::uint64_t>(p.vx));
        put_u64(os, std::bit_cast<std::uint64_t>(p.vy));
    }
    if (!os) throw std::runtime_error("snapshot: write failed");
}

Snapshot read_snapshot(std::istream& is) {
    char magic[8];
    if (!is.read(magic, 8) || !std::equal(magic, magic + 8, kSnapshotMagic)) {
        throw std::runtime_error("snapshot: bad magic");
    }
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("snapshot: truncated file");
    Snapshot snap;
    snap.completed_steps = std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 |
                           std::uint32_t{b[3]} << 24;
    const std::uint64_t count = get_u64(is);
    snap.particles.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 24)));
    for (std::uint64_t i = 0; i < count; ++i) {
        Particle p;
        p.pid = get_u64(is);
        p.x = std::bit_cast<double>(get_u64(is));
        p.y = std::bit_cast<double>(get_u64(is));
        p.vx = std::bit_cast<double>(get_u64(is));
        p.vy = std::bit_cast<double>(get_u64(is));
        if (!snap.particles.empty() && snap.particles.back().pid >= p.pid) {
            throw std::runtime_error("snapshot: records not pid-ordered");
        }
        snap.particles.push_back(p);
    }
    return snap;
}

}  // namespace cbrng::brownian
