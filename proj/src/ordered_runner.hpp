#pragma once

#include <functional>
#include <future>
#include <vector>

#include "halfint/bases.hpp"

namespace halfint {

// Runs form-producing tasks in batches of worker_threads() and hands the
// results to the sink in submission order.
class OrderedRunner {
 public:
  explicit OrderedRunner(FormSink sink) : sink_(std::move(sink)), width_(worker_threads()) {}

  void submit(std::function<LabeledForm()> task) {
    if (width_ <= 1) {
      sink_(task());
      return;
    }
    pending_.push_back(std::async(std::launch::async, std::move(task)));
    if (pending_.size() >= width_) flush();
  }

  void flush() {
    for (auto& f : pending_) sink_(f.get());
    pending_.clear();
  }

 private:
  FormSink sink_;
  unsigned width_;
  std::vector<std::future<LabeledForm>> pending_;
};

}  // namespace halfint
