use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use systolic::{
    acyclicity, collapse_sequence, directed_geodesic, gradient_matching, hex_plane_generator,
    is_k_large, systole, Complex, ComplexGenerator, VertexId,
};

fn hexdisk(r: usize) -> Complex {
    hex_plane_generator().produce(r).unwrap().0
}

fn bench_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("hex_disk_construction");
    for r in [2usize, 3, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(r), &r, |b, &r| {
            b.iter(|| hexdisk(r));
        });
    }
    group.finish();
}

fn bench_largeness(c: &mut Criterion) {
    let disk = hexdisk(3);
    c.bench_function("is_6_large_hexdisk3", |b| {
        b.iter(|| is_k_large(&disk, 6).unwrap())
    });
    c.bench_function("systole_hexdisk3", |b| b.iter(|| systole(&disk)));
}

fn bench_matching(c: &mut Criterion) {
    let mut group = c.benchmark_group("gradient_matching");
    group.sample_size(20);
    for r in [2usize, 3] {
        let disk = hexdisk(r);
        group.bench_with_input(BenchmarkId::from_parameter(r), &disk, |b, disk| {
            b.iter(|| gradient_matching(disk, VertexId(0)).unwrap());
        });
    }
    group.finish();

    let disk = hexdisk(3);
    c.bench_function("full_collapse_pipeline_hexdisk3", |b| {
        b.iter(|| {
            let field = gradient_matching(&disk, VertexId(0)).unwrap();
            let cert = acyclicity(&disk, &field).unwrap();
            collapse_sequence(&disk, &field, &cert).unwrap()
        });
    });
}

fn bench_geodesics(c: &mut Criterion) {
    let disk = hexdisk(3);
    let dist = disk.distances_from(VertexId(0));
    let far = disk
        .vertex_ids()
        .find(|v| dist[v.0 as usize] == Some(3))
        .unwrap();
    c.bench_function("directed_geodesic_radius3", |b| {
        b.iter(|| directed_geodesic(&disk, far, VertexId(0)).unwrap());
    });
}

criterion_group!(
    benches,
    bench_construction,
    bench_largeness,
    bench_matching,
    bench_geodesics
);
criterion_main!(benches);
