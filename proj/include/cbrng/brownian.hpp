#pragma once

// 2D Brownian dynamics of independent particles. Each particle draws from
// the stream (pid, iteration), so no generator state is stored anywhere and
// results do not depend on how particles are split across threads.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "cbrng/engines.hpp"

namespace cbrng::brownian {

struct Particle {
    std::uint64_t pid = 0;
    double x = 0.0;
    double y = 0.0;
    double vx = 0.0;
    double vy = 0.0;

    friend bool operator==(const Particle&, const Particle&) = default;
};

// Particles carry no generator.
static_assert(sizeof(Particle) == 40 && std::is_trivially_copyable_v<Particle>);

struct SimConfig {
    std::size_t n_particles = 1000;
    std::uint32_t steps = 100;
    double dt = 0.01;
    double gamma = 0.1;
    double mass = 1.0;
    unsigned threads = 1;
    Algorithm algorithm = Algorithm::philox;
    std::uint32_t init_counter = 0;

    /// Throws std::invalid_argument on dt <= 0, gamma < 0, mass <= 0 or
    /// threads == 0.
    void validate() const;
};

struct TrajectoryChecksum {
    std::uint64_t digest = 0;

    std::string hex() const;
    friend bool operator==(const TrajectoryChecksum&, const TrajectoryChecksum&) = default;
};

inline constexpr std::uint64_t kFnvOffsetBasis = 0xCBF29CE484222325ull;
inline constexpr std::uint64_t kFnvPrime = 0x100000001B3ull;

/// FNV-1a over the little-endian bytes of (pid, x, y, vx, vy) per particle.
/// Throws std::invalid_argument unless pids are strictly increasing.
TrajectoryChecksum checksum(std::span<const Particle> particles);

/// pid = index; position uniform in the unit square and velocity uniform in
/// [-1, 1)^2, both from stream (pid, cfg.init_counter).
std::vector<Particle> init_particles(const SimConfig& cfg);

/// One step for every particle in the span: drag, random kick from stream
/// (pid, iteration), then explicit Euler position update.
void apply_forces_step(std::span<Particle> particles, std::uint32_t iteration, const SimConfig& cfg);

/// Iterations first_iteration .. first_iteration + steps - 1, split over
/// cfg.threads workers by contiguous pid ranges with a barrier per step.
void advance(std::span<Particle> particles, std::uint32_t first_iteration, std::uint32_t steps,
             const SimConfig& cfg);

struct SimResult {
    std::vector<Particle> particles;
    TrajectoryChecksum checksum;
    std::chrono::duration<double> wall_time{};
    double particle_steps_per_second = 0.0;
};

SimResult run_sim(const SimConfig& cfg);

/// Particles after completed_steps iterations.
struct Snapshot {
    std::uint32_t completed_steps = 0;
    std::vector<Particle> particles;
};

/// Continues from a snapshot up to cfg.steps total iterations.
SimResult resume_sim(Snapshot snapshot, const SimConfig& cfg);

// Snapshot file: "BDSNAP01" | completed_steps u32 | count u64 | count records
// of (pid u64, x, y, vx, vy f64), all little-endian, pid-ordered.
void write_snapshot(std::ostream& os, const Snapshot& snap);
Snapshot read_snapshot(std::istream& is);

}  // namespace cbrng::brownian
