#pragma once

#include <algorithm>
#include <atomic>
#include <barrier>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <thread>
#include <vector>

#include "graphcomm/error.hpp"
#include "graphcomm/store/graph_view.hpp"

namespace graphcomm::lpa {

template <typename Value>
struct Incoming {
  Value value;
  double weight;
};

// A vertex program: initial_value(v) at step 0, then compute() once per
// vertex per superstep with the messages its neighbors sent in the previous
// communicate phase (one per incident edge end, ANY direction).
template <typename P>
concept VertexProgram = requires(const P& p, VertexId v, std::size_t step,
                                 const typename P::Value& own,
                                 std::span<const Incoming<typename P::Value>> in) {
  typename P::Value;
  { p.initial_value(v) } -> std::convertible_to<typename P::Value>;
  { p.compute(v, step, own, in) } -> std::convertible_to<typename P::Value>;
  requires std::equality_comparable<typename P::Value>;
};

struct PregelStatus {
  std::size_t step = 0;
  std::size_t active_count = 0;  // vertices whose value changed in this step
  std::size_t messages = 0;
  bool converged = false;
};

struct PregelOptions {
  std::size_t max_gss = 500;
  std::size_t workers = 1;
  // Stop at the first superstep without changes. When false, the run always
  // performs max_gss supersteps (useful for throughput measurement).
  bool halt_on_convergence = true;
  std::function<void(const PregelStatus&)> on_status;
};

template <typename Value>
struct PregelResult {
  std::vector<Value> values;
  std::size_t supersteps = 0;
  bool converged = false;
  std::uint64_t messages = 0;
};

namespace detail {

struct Shard {
  VertexId begin;
  VertexId end;
};

inline std::vector<Shard> make_shards(const GraphView& view, std::size_t workers) {
  const std::size_t n = view.vertex_count();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  std::vector<Shard> shards;
  for (std::size_t w = 0; w < workers; ++w) {
    shards.push_back({static_cast<VertexId>(n * w / workers),
                      static_cast<VertexId>(n * (w + 1) / workers)});
  }
  return shards;
}

}  // namespace detail

// Bulk-synchronous execution. Each superstep has a communicate phase, where
// every vertex writes its value into the inbox slot of each neighbor, and a
// compute phase, where every vertex folds its inbox into a new value. Phases
// are separated by barriers, so compute at step k sees exactly the messages
// written at step k. Inbox slots are fixed per edge end, which makes delivery
// exactly-once and the result independent of the worker count.
template <VertexProgram Program>
PregelResult<typename Program::Value> run_pregel(const GraphView& view,
                                                 const Program& program,
                                                 const PregelOptions& options = {}) {
  using Value = typename Program::Value;
  if (options.max_gss < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_gss must be at least 1");
  }
  if (options.workers < 1) {
    throw Error(ErrorCode::kInvalidArgument, "workers must be at least 1");
  }

  const std::size_t n = view.vertex_count();
  PregelResult<Value> result;
  if (n == 0) {
    result.converged = true;
    return result;
  }

  std::vector<Value> current;
  current.reserve(n);
  for (VertexId v = 0; v < n; ++v) current.push_back(program.initial_value(v));
  std::vector<Value> next = current;

  const std::size_t slots = view.any_slot_count();
  std::vector<Incoming<Value>> inbox;
  inbox.reserve(slots);
  for (std::size_t s = 0; s < slots; ++s) inbox.push_back({Value{}, view.slot_weight(s)});

  const auto shards = detail::make_shards(view, options.workers);
  std::vector<std::size_t> changed(shards.size(), 0);

  auto communicate = [&](const detail::Shard& shard) {
    for (VertexId v = shard.begin; v < shard.end; ++v) {
      const std::size_t end = view.any_offset(v + 1);
      for (std::size_t s = view.any_offset(v); s < end; ++s) {
        inbox[view.mirror(s)].value = current[v];
      }
    }
  };
  auto compute = [&](std::size_t w, std::size_t step) {
    std::size_t count = 0;
    for (VertexId v = shards[w].begin; v < shards[w].end; ++v) {
      const std::size_t begin = view.any_offset(v);
      const std::span<const Incoming<Value>> messages(inbox.data() + begin,
                                                      view.any_offset(v + 1) - begin);
      next[v] = program.compute(v, step, current[v], messages);
      if (!(next[v] == current[v])) ++count;
    }
    changed[w] = count;
  };

  // Runs after both phases of a step; returns true to stop.
  std::size_t step = 0;
  auto finish_step = [&]() -> bool {
    std::size_t active = 0;
    for (auto c : changed) active += c;
    current.swap(next);
    result.supersteps = step;
    result.messages += slots;
    result.converged = active == 0;
    if (options.on_status) options.on_status({step, active, slots, result.converged});
    if (result.converged && options.halt_on_convergence) return true;
    return step >= options.max_gss;
  };

  if (shards.size() == 1) {
    for (;;) {
      ++step;
      communicate(shards[0]);
      compute(0, step);
      if (finish_step()) break;
    }
  } else {
    std::atomic<bool> stop{false};
    std::exception_ptr error;
    std::vector<std::exception_ptr> worker_errors(shards.size());
    auto on_phase_end = [&]() noexcept {
      for (auto& e : worker_errors) {
        if (e && !error) error = e;
      }
      if (error) {
        stop = true;
        return;
      }
      try {
        if (finish_step()) stop = true;
      } catch (...) {
        error = std::current_exception();
        stop = true;
      }
      if (!stop) ++step;
    };
    std::barrier phase_end(static_cast<std::ptrdiff_t>(shards.size()), on_phase_end);
    std::barrier communicated(static_cast<std::ptrdiff_t>(shards.size()));
    step = 1;

    auto worker = [&](std::size_t w) {
      while (!stop) {
        try {
          communicate(shards[w]);
        } catch (...) {
          worker_errors[w] = std::current_exception();
        }
        communicated.arrive_and_wait();
        try {
          if (!worker_errors[w]) compute(w, step);
        } catch (...) {
          worker_errors[w] = std::current_exception();
        }
        phase_end.arrive_and_wait();
      }
    };
    std::vector<std::jthread> threads;
    for (std::size_t w = 1; w < shards.size(); ++w) threads.emplace_back(worker, w);
    worker(0);
    threads.clear();
    if (error) std::rethrow_exception(error);
  }

  result.values = std::move(current);
  return result;
}

}  // namespace graphcomm::lpa
