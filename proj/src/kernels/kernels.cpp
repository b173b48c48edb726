#include "tripodgate/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace tripodgate::kernels {

namespace {

bool impl_available(Impl impl)
{
    switch (impl) {
    case Impl::scalar:
        return true;
    case Impl::avx2:
#if defined(__x86_64__) || defined(_M_X64)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    case Impl::neon:
#if defined(__aarch64__)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Impl pick_default()
{
    if (const char* env = std::getenv("TRIPODGATE_KERNELS")) {
        const std::string s(env);
        Impl want = Impl::scalar;
        if (s == "scalar")
            want = Impl::scalar;
        else if (s == "avx2")
            want = Impl::avx2;
        else if (s == "neon")
            want = Impl::neon;
        else
            throw std::runtime_error("TRIPODGATE_KERNELS must be scalar, avx2 or neon");
        if (!impl_available(want))
            throw std::runtime_error("requested kernel implementation unavailable on this CPU: " + s);
        return want;
    }
    if (impl_available(Impl::avx2))
        return Impl::avx2;
    if (impl_available(Impl::neon))
        return Impl::neon;
    return Impl::scalar;
}

Impl g_active = pick_default();

} // namespace

Impl active() { return g_active; }

void force(Impl impl)
{
    if (!impl_available(impl))
        throw std::runtime_error("kernel implementation unavailable on this CPU");
    g_active = impl;
}

std::string_view impl_name(Impl impl)
{
    switch (impl) {
    case Impl::scalar: return "scalar";
    case Impl::avx2: return "avx2";
    case Impl::neon: return "neon";
    }
    return "?";
}

const Dispatch& table()
{
    switch (g_active) {
#if defined(__x86_64__) || defined(_M_X64)
    case Impl::avx2:
        return detail::avx2_table;
#endif
#if defined(__aarch64__)
    case Impl::neon:
        return detail::neon_table;
#endif
    default:
        return detail::scalar_table;
    }
}

} // namespace tripodgate::kernels
