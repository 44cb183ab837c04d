//! Parallel vs sequential execution of the enumeration-heavy kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mmlab_core::exec;
use mmlab_core::isotropic::{z_graph, Graph};
use mmlab_core::minors_catalog::{fixture, has_minor, h33};
use mmlab_core::orienting::{ort, ort_fast};
use mmlab_core::polynomials::{global_interlace, q1};

const MODES: [(&str, bool); 2] = [("parallel", true), ("sequential", false)];

fn bench_modes(c: &mut Criterion, group: &str, mut f: impl FnMut()) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    for (name, on) in MODES {
        exec::set_parallel(on);
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(&mut f));
    }
    exec::set_parallel(true);
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let cycle6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
    let z6 = z_graph(&cycle6).unwrap();
    let petersenish = Graph::from_code(8, 0x05a5_a5a5);

    bench_modes(c, "ort_definition_6", || {
        black_box(ort(&z6.multimatroid).unwrap());
    });
    bench_modes(c, "ort_fast_6", || {
        black_box(ort_fast(&z6.multimatroid, z6.blocks[2]).unwrap());
    });
    bench_modes(c, "q1_zg_6", || {
        black_box(q1(&z6.multimatroid).unwrap());
    });
    bench_modes(c, "global_interlace_8", || {
        black_box(global_interlace(&petersenish).unwrap());
    });
    let zu = fixture("ZU24_3").unwrap().multimatroid;
    let h = h33();
    bench_modes(c, "h33_minor_scan", || {
        black_box(has_minor(&zu, &h).unwrap());
    });
}

criterion_group!(benches, enumeration);
criterion_main!(benches);
