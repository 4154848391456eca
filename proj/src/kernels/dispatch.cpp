// Copyright (c) 2026 The slr Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "slr/error.hpp"
#include "slr/kernels.hpp"

namespace slr::kernels {

#if defined(SLR_HAVE_AVX2)
const Table* avx2_table_impl() noexcept;
#endif

namespace {

Isa initial_isa() noexcept {
  if (const char* env = std::getenv("SLR_KERNELS"); env != nullptr && std::string_view(env) == "scalar") {
    return Isa::scalar;
  }
  return cpu_supports(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<const Table*>& current() noexcept {
  static std::atomic<const Table*> table{initial_isa() == Isa::avx2 ? avx2_table() : &scalar_table()};
  return table;
}

}  // namespace

const Table* avx2_table() noexcept {
#if defined(SLR_HAVE_AVX2)
  return avx2_table_impl();
#else
  return nullptr;
#endif
}

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SLR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept {
  return current().load(std::memory_order_acquire) == &scalar_table() ? Isa::scalar : Isa::avx2;
}

void set_isa(Isa isa) {
  if (!cpu_supports(isa)) {
    throw ParameterError("kernel variant '" + std::string(isa_name(isa)) + "' is not available on this CPU/build");
  }
  current().store(isa == Isa::avx2 ? avx2_table() : &scalar_table(), std::memory_order_release);
}

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

const Table& active() noexcept { return *current().load(std::memory_order_acquire); }

}  // namespace slr::kernels
