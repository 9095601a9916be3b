#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "taxel/catalog.hpp"
#include "taxel/codec.hpp"
#include "taxel/lint.hpp"
#include "taxel/scanconv.hpp"
#include "taxel/scene.hpp"
#include "taxel/service.hpp"

using namespace taxel;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(TAXEL_SOURCE_DIR) + "/tests/fixtures/scenes/" + name + ".scene");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void BM_MidpointLineSweep(benchmark::State& state) {
    for (auto _ : state) {
        std::size_t n = 0;
        for (int x = 0; x < 27; ++x)
            for (int y = 0; y < 27; ++y) n += midpoint_line({0, 0}, {x, y}).points.size();
        benchmark::DoNotOptimize(n);
    }
    state.SetItemsProcessed(state.iterations() * 729);
}
BENCHMARK(BM_MidpointLineSweep);

void BM_PixelArtLineSweep(benchmark::State& state) {
    for (auto _ : state) {
        std::size_t n = 0;
        for (int x = 0; x < 27; ++x)
            for (int y = 0; y < 27; ++y) n += pixel_art_line({0, 0}, {x, y}).points.size();
        benchmark::DoNotOptimize(n);
    }
    state.SetItemsProcessed(state.iterations() * 729);
}
BENCHMARK(BM_PixelArtLineSweep);

void BM_ConicLoop(benchmark::State& state) {
    const int w = static_cast<int>(state.range(0)), h = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(conic_loop(w, h));
}
BENCHMARK(BM_ConicLoop)->Args({3, 3})->Args({14, 14})->Args({14, 19})->Args({27, 27})->Args({27, 9});

void BM_BuildCatalog(benchmark::State& state) {
    for (auto _ : state)
        for (const auto& e : catalog_list()) benchmark::DoNotOptimize(build(e.name));
}
BENCHMARK(BM_BuildCatalog);

void BM_LintCatalog(benchmark::State& state) {
    std::vector<ShapeRender> renders;
    for (const auto& e : catalog_list())
        for (auto& r : build(e.name)) renders.push_back(std::move(r));
    for (auto _ : state)
        for (const auto& r : renders) benchmark::DoNotOptimize(lint_render(r));
}
BENCHMARK(BM_LintCatalog);

void BM_ParseEmitScene(benchmark::State& state) {
    const std::string text = fixture("house");
    for (auto _ : state) benchmark::DoNotOptimize(emit_scene(parse_scene(text)));
}
BENCHMARK(BM_ParseEmitScene);

void BM_BrailleRoundTrip(benchmark::State& state) {
    Scene s;
    s.items.push_back(CatalogItem{"sine_curve", {0, 0}, std::nullopt});
    const PinGrid g = render_scene(s).grid;
    for (auto _ : state) benchmark::DoNotOptimize(import_braille(export_braille(g)));
}
BENCHMARK(BM_BrailleRoundTrip);

void BM_ServiceRender(benchmark::State& state) {
    const std::string body = fixture("smiley_a");
    for (auto _ : state) benchmark::DoNotOptimize(service::handle("POST", "/api/render", body));
}
BENCHMARK(BM_ServiceRender);

}  // namespace

BENCHMARK_MAIN();
