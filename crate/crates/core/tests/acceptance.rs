//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use carlitz::exceptional::{brute_check, permits_degree};
use carlitz::field::prime_power;
use carlitz::{Error, Field, FieldElement, Gadget, GenToken, GenWord, Permutation, Poly};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn field(q: u64) -> Arc<Field> {
    Arc::new(Field::from_order(q).unwrap())
}

fn prime_powers(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&q| prime_power(q).is_some())
}

fn random_permutation(q: u32, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<u32> = (0..q).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// All permutations of `0..q` by Heap's algorithm.
fn all_permutations(q: u32) -> Vec<Permutation> {
    fn heap(k: usize, v: &mut Vec<u32>, out: &mut Vec<Permutation>) {
        if k <= 1 {
            out.push(Permutation::from_images(v.clone()).unwrap());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, v, out);
            if k.is_multiple_of(2) {
                v.swap(i, k - 1);
            } else {
                v.swap(0, k - 1);
            }
        }
        heap(k - 1, v, out);
    }
    let mut out = Vec::new();
    heap(q as usize, &mut (0..q).collect(), &mut out);
    out
}

fn random_word(f: &Arc<Field>, max_len: usize, rng: &mut ChaCha8Rng) -> GenWord {
    let q = f.order() as u64;
    let len = rng.gen_range(0..=max_len);
    let tokens = (0..len)
        .map(|_| {
            if rng.gen_bool(0.5) {
                GenToken::Inv
            } else {
                let a = f.element(rng.gen_range(1..q)).unwrap();
                let b = f.element(rng.gen_range(0..q)).unwrap();
                GenToken::linear(a, b)
            }
        })
        .collect();
    GenWord::new(f.clone(), tokens).unwrap()
}

fn within(limit: Duration, start: Instant, summary: String) -> Outcome {
    let elapsed = start.elapsed();
    if elapsed <= limit {
        Ok(format!("{summary} in {:.2}s", elapsed.as_secs_f64()))
    } else {
        Err(format!(
            "{summary}, but took {:.2}s (limit {}s)",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

/// Every (0 a) gadget word for 3 <= q <= 64.
fn gadget_words() -> Vec<(Gadget, FieldElement, GenWord)> {
    let mut out = Vec::new();
    for q in prime_powers(3, 64) {
        let f = field(q);
        for a in f.elements().skip(1) {
            for g in [Gadget::Zieve, Gadget::Carlitz] {
                out.push((g, a, GenWord::transposition(f.clone(), a, g).unwrap()));
            }
        }
    }
    out
}

fn decompose_cases() -> Vec<(Arc<Field>, Permutation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut out = Vec::new();
    for q in [3u64, 4, 5] {
        let f = field(q);
        for sigma in all_permutations(q as u32) {
            out.push((f.clone(), sigma));
        }
    }
    for q in [7u64, 8, 9, 11, 13, 16, 25, 27] {
        let f = field(q);
        for _ in 0..100 {
            out.push((f.clone(), random_permutation(q as u32, &mut rng)));
        }
    }
    out
}

fn compile_cases() -> Vec<GenWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut out = Vec::new();
    for q in [3u64, 4, 5, 7, 9, 16, 27] {
        let f = field(q);
        for _ in 0..100 {
            out.push(random_word(&f, 30, &mut rng));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let words = gadget_words();
    for (g, a, w) in &words {
        let q = w.field().order();
        let expected = Permutation::transposition(q, 0, a.index()).unwrap();
        if w.to_permutation() != expected {
            return Err(format!(
                "{g} gadget for a = {a} over q = {q} induces {}",
                w.to_permutation()
            ));
        }
    }
    within(
        Duration::from_secs(10),
        start,
        format!("{} gadget words induce (0 a)", words.len()),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let cases = decompose_cases();
    let mut checked = 0;
    for (f, sigma) in &cases {
        for g in [Gadget::Zieve, Gadget::Carlitz] {
            let w = GenWord::decompose(f.clone(), sigma, g).unwrap();
            if w.to_permutation() != *sigma {
                return Err(format!(
                    "{g} decomposition of {sigma} over q = {} fails",
                    f.order()
                ));
            }
            checked += 1;
        }
    }
    within(
        Duration::from_secs(30),
        start,
        format!(
            "{} permutations, {checked} decompositions verified",
            cases.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let words = compile_cases();
    for w in &words {
        let compiled = w.compile().unwrap();
        let oracle = Poly::interpolate_table(w.field().clone(), &w.value_table()).unwrap();
        if compiled.coeffs() != oracle.coeffs() {
            return Err(format!(
                "q = {}: compile gives {compiled}, interpolation {oracle}",
                w.field().order()
            ));
        }
    }
    Ok(format!(
        "{} random words compile to their interpolation polynomial",
        words.len()
    ))
}

fn criterion_4() -> Outcome {
    let check = |w: &GenWord, origin: &str| -> Result<(), String> {
        let q = w.field().order() as usize;
        let poly = w.compile().unwrap();
        match poly.degree() {
            Some(d) if d <= q - 2 => Ok(()),
            d => Err(format!(
                "{origin} word over q = {q} compiles to degree {d:?}"
            )),
        }
    };
    let mut count = 0;
    for (_, _, w) in gadget_words() {
        check(&w, "gadget")?;
        count += 1;
    }
    for (f, sigma) in decompose_cases() {
        for g in [Gadget::Zieve, Gadget::Carlitz] {
            check(
                &GenWord::decompose(f.clone(), &sigma, g).unwrap(),
                "decomposed",
            )?;
            count += 1;
        }
    }
    for w in compile_cases() {
        check(&w, "random")?;
        count += 1;
    }
    Ok(format!("{count} compiled words all have degree <= q - 2"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for q in prime_powers(3, 1000) {
        let m = BigUint::from(q - 2);
        let mut qk = BigUint::from(1u32);
        for k in 1..=30u64 {
            qk *= q;
            let oracle = num_integer_gcd(&m, &(&qk - 1u32)) == BigUint::from(1u32);
            if permits_degree(q, k).unwrap() != oracle {
                return Err(format!(
                    "criterion disagrees with gcd(q-2, q^k-1) at q = {q}, k = {k}"
                ));
            }
            pairs += 1;
        }
    }
    let mut brute = 0;
    for q in [3u64, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27] {
        let mut k = 1u32;
        while q.pow(k) <= 1 << 16 {
            if permits_degree(q, k as u64).unwrap() != brute_check(q, k).unwrap() {
                return Err(format!(
                    "criterion disagrees with brute force at q = {q}, k = {k}"
                ));
            }
            brute += 1;
            k += 1;
        }
    }
    let permitted = |q: u64| {
        (1..=10)
            .filter(|&k| permits_degree(q, k).unwrap())
            .collect::<Vec<_>>()
    };
    if permitted(5) != vec![1, 3, 5, 7, 9] {
        return Err(format!("q = 5 permits {:?}", permitted(5)));
    }
    if (1..=30).any(|k| permits_degree(7, k).unwrap() == (k % 4 == 0)) {
        return Err("q = 7 does not forbid exactly the multiples of 4".into());
    }
    if !(1..=30).all(|k| permits_degree(4, k).unwrap()) {
        return Err("q = 4 forbids some degree".into());
    }
    within(
        Duration::from_secs(10),
        start,
        format!("{pairs} gcd-oracle pairs, {brute} brute-force extensions, spot values match"),
    )
}

fn num_integer_gcd(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut a, mut b) = (a.clone(), b.clone());
    while b != BigUint::from(0u32) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut count = 0;
    for q in [5u64, 9, 16] {
        let f = field(q);
        for _ in 0..1000 {
            let w = random_word(&f, 30, &mut rng);
            let s = w.simplify();
            if s.to_permutation() != w.to_permutation() {
                return Err(format!("simplify changed the permutation of {w}"));
            }
            if s.simplify() != s {
                return Err(format!("simplify is not idempotent on {w}"));
            }
            if s.tokens()
                .windows(2)
                .any(|p| p[0].is_inv() == p[1].is_inv())
            {
                return Err(format!(
                    "simplified word {s} has adjacent tokens of one kind"
                ));
            }
            count += 1;
        }
    }
    Ok(format!(
        "{count} random words: permutation kept, idempotent, alternating"
    ))
}

fn criterion_7() -> Outcome {
    let f2 = field(2);
    let one = f2.one();
    let rejections = [
        ("h", GenWord::h(f2.clone()).err()),
        ("swap01", GenWord::swap01(f2.clone()).err()),
        ("zieve", GenWord::transposition_zieve(f2.clone(), one).err()),
        (
            "carlitz",
            GenWord::transposition_carlitz(f2.clone(), one).err(),
        ),
        (
            "inv token",
            GenWord::new(f2.clone(), vec![GenToken::Inv]).err(),
        ),
    ];
    for (name, err) in rejections {
        if err != Some(Error::InvOverF2) {
            return Err(format!("{name} over F_2 gave {err:?}"));
        }
    }
    for sigma in [
        Permutation::identity(2),
        Permutation::transposition(2, 0, 1).unwrap(),
    ] {
        for g in [Gadget::Zieve, Gadget::Carlitz] {
            let w = GenWord::decompose(f2.clone(), &sigma, g).unwrap();
            if w.inv_count() != 0 || w.to_permutation() != sigma {
                return Err(format!("decomposition of {sigma} over F_2 is {w}"));
            }
        }
    }
    Ok("q = 2 rejects every inversion constructor; both permutations decompose affinely".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "1 theorem verification (3 <= q <= 64, both gadgets)",
            criterion_1,
        ),
        ("2 full generation by decompose + verify", criterion_2),
        ("3 compiler equals interpolation oracle", criterion_3),
        ("4 Hermite degree bound", criterion_4),
        ("5 exceptional-degree criterion", criterion_5),
        ("6 simplify laws", criterion_6),
        ("7 q = 2 behavior", criterion_7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
