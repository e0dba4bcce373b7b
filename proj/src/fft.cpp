#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace specpred::detail {

namespace {

// FFTW plan creation is not thread-safe; execution is.
std::mutex& planner_mutex() {
	static std::mutex m;
	return m;
}

struct FftwBuffer {
	explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
		if (!ptr) throw std::bad_alloc();
	}
	~FftwBuffer() { fftw_free(ptr); }
	FftwBuffer(const FftwBuffer&) = delete;
	FftwBuffer& operator=(const FftwBuffer&) = delete;
	void* ptr;
};

} // namespace

std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
	const std::size_t n = x.size();
	if (n == 0) throw std::invalid_argument("rfft: empty input");
	const std::size_t n_out = n / 2 + 1;

	FftwBuffer in_buf(sizeof(double) * n);
	FftwBuffer out_buf(sizeof(fftw_complex) * n_out);
	double* in = static_cast<double*>(in_buf.ptr);
	fftw_complex* out = static_cast<fftw_complex*>(out_buf.ptr);

	fftw_plan plan;
	{
		std::lock_guard<std::mutex> lock(planner_mutex());
		plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
	}
	if (!plan) throw std::runtime_error("rfft: fftw plan creation failed");

	for (std::size_t i = 0; i < n; ++i) in[i] = x[i];
	fftw_execute(plan);

	std::vector<std::complex<double>> result(n_out);
	for (std::size_t k = 0; k < n_out; ++k) result[k] = {out[k][0], out[k][1]};

	{
		std::lock_guard<std::mutex> lock(planner_mutex());
		fftw_destroy_plan(plan);
	}
	return result;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& half_spectrum, std::size_t n) {
	if (n == 0) throw std::invalid_argument("irfft: empty output length");
	const std::size_t n_in = n / 2 + 1;
	if (half_spectrum.size() != n_in)
		throw std::invalid_argument("irfft: half spectrum size does not match output length");

	FftwBuffer in_buf(sizeof(fftw_complex) * n_in);
	FftwBuffer out_buf(sizeof(double) * n);
	fftw_complex* in = static_cast<fftw_complex*>(in_buf.ptr);
	double* out = static_cast<double*>(out_buf.ptr);

	fftw_plan plan;
	{
		std::lock_guard<std::mutex> lock(planner_mutex());
		plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
	}
	if (!plan) throw std::runtime_error("irfft: fftw plan creation failed");

	for (std::size_t k = 0; k < n_in; ++k) {
		in[k][0] = half_spectrum[k].real();
		in[k][1] = half_spectrum[k].imag();
	}
	fftw_execute(plan);

	std::vector<double> result(out, out + n);
	{
		std::lock_guard<std::mutex> lock(planner_mutex());
		fftw_destroy_plan(plan);
	}
	return result;
}

} // namespace specpred::detail
