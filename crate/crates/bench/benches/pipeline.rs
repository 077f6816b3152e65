use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rsafe_core::random::random_game;
use rsafe_core::*;

const BOTH: &str = "G(c -> X(f | F b)) & G(e -> X G !b)";

fn pipeline(c: &mut Criterion) {
    let sig = Signature::coffee();
    let f = parse_ltl(BOTH, &sig).unwrap();
    let nba = translate(&f, &sig).unwrap();
    let dpw = determinize(&nba, DEFAULT_STATE_BUDGET).unwrap();

    c.bench_function("translate coffee", |b| {
        b.iter(|| translate(black_box(&f), &sig).unwrap())
    });
    c.bench_function("determinize coffee", |b| {
        b.iter(|| determinize(black_box(&nba), DEFAULT_STATE_BUDGET).unwrap())
    });
    c.bench_function("check coffee", |b| {
        b.iter(|| {
            check_reactive_safety(Property::Ltl(black_box(&f)), &sig, &CheckOptions::default())
                .unwrap()
        })
    });

    let checker = MooreChecker::for_word(&dpw).unwrap();
    let machines: Vec<MooreMachine> = enumerate_moore(&sig, 2).unwrap().collect();
    c.bench_function("moore checks (coffee, <= 2 states)", |b| {
        b.iter(|| {
            machines
                .iter()
                .filter(|m| checker.accepts(m).unwrap())
                .count()
        })
    });
}

fn games(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let game = random_game(&mut rng, 2000, 8, 3);
    c.bench_function("zielonka 2000 vertices", |b| {
        b.iter(|| solve(black_box(&game)))
    });
}

criterion_group!(benches, pipeline, games);
criterion_main!(benches);
