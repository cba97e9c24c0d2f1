//! Acceptance suite: one test per acceptance criterion, each printing a
//! PASS line with its elapsed time (visible with `--nocapture`).

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use curata_core::classify::{
    evaluate, knn_predict, parse_arff, predict_nb, train_nb, ArffAttribute, ArffDataset,
    ArffValue, AttrKind,
};
use curata_core::index::{search, InvertedIndex, SlopQuery};
use curata_core::lexical::{stem, synonyms, SynsetLexicon};
use curata_core::linking::{link_entity, KbClient, KbClientConfig, LinkError, LinkMetric, Transport};
use curata_core::ner::{extract_entities, EntityType, Gazetteer};
use curata_core::pipeline::validate_result_xml;
use curata_core::similarity::{
    cosine_vec, dice_tokens, euclidean, jaccard_tokens, jaro, levenshtein,
    levenshtein_normalized, qgram, soundex_sim, NumericVector,
};
use curata_core::text::{tokenize_all, Document, StopwordList};

fn fixture(path: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(path)
}

fn done(criterion: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "{criterion} took {elapsed:?}, budget {budget:?}"
    );
    println!("[PASS] {criterion} ({elapsed:?})");
}

/// xorshift64*: deterministic across platforms and builds.
struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    fn f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn word(&mut self, max_len: usize) -> String {
        let len = self.below(max_len + 1);
        (0..len)
            .map(|_| (b'a' + self.below(26) as u8) as char)
            .collect()
    }

    fn vector(&mut self, dim: usize, non_negative: bool) -> NumericVector {
        let values: Vec<f64> = (0..dim)
            .map(|_| {
                let v = self.f64() * 10.0;
                if non_negative {
                    v
                } else {
                    v - 5.0
                }
            })
            .collect();
        NumericVector::new(values).unwrap()
    }
}

#[test]
fn acceptance_01_obama_sentence() {
    let start = Instant::now();
    let gazetteer = Gazetteer::builtin();
    let text = "Obama was born on August 4, 1961, at Gynecological Hospital in Honolulu";
    let entities = extract_entities(text, &gazetteer);
    let got: Vec<(&str, EntityType)> = entities.iter().map(|e| (e.word.as_str(), e.ner)).collect();
    assert_eq!(
        got,
        vec![
            ("Obama", EntityType::Person),
            ("August 4, 1961", EntityType::Date),
            ("Gynecological Hospital", EntityType::Organization),
            ("Honolulu", EntityType::City),
        ],
        "expected exactly the four annotated spans"
    );
    done("C1 Obama sentence reproduction", start, Duration::from_secs(1));
}

#[test]
fn acceptance_02_gazetteer_table_fidelity() {
    let start = Instant::now();
    let gazetteer = Gazetteer::builtin();
    let rows: &[(&str, EntityType)] = &[
        ("Paris", EntityType::City),
        ("Asia", EntityType::Continent),
        ("USA", EntityType::Country),
        ("Acarbose", EntityType::Drug),
        ("Asus", EntityType::Company),
        ("Larceny", EntityType::Crime),
        ("Archery", EntityType::Sport),
        ("Christmas", EntityType::Holiday),
        ("Bag", EntityType::Product),
        ("Flood", EntityType::Disaster),
        ("Ubuntu", EntityType::Os),
        ("Asian Cup", EntityType::SportEv),
        ("Cliff", EntityType::Geo),
        ("Suncoast", EntityType::Region),
        ("New South Wales", EntityType::State),
        ("Senior Lecturer", EntityType::Degree),
    ];
    for (surface, expected) in rows {
        let text = format!("x {surface} y");
        let entities = extract_entities(&text, &gazetteer);
        let hit = entities
            .iter()
            .find(|e| e.word == *surface && e.ner == *expected);
        assert!(
            hit.is_some(),
            "row {surface:?} -> {expected} not found in {entities:?}"
        );
    }
    done("C2 gazetteer table fidelity", start, Duration::from_secs(1));
}

/// All strings over {a,b,c} up to `max_len`.
fn enumerate_strings(max_len: usize) -> Vec<String> {
    let mut all = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for c in ['a', 'b', 'c'] {
                let mut t = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Single-edit neighbours staying within `max_len`.
fn edit_neighbours(s: &str, max_len: usize) -> Vec<String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    for i in 0..chars.len() {
        let mut deleted = chars.clone();
        deleted.remove(i);
        out.push(deleted.into_iter().collect());
        for c in ['a', 'b', 'c'] {
            if chars[i] != c {
                let mut substituted = chars.clone();
                substituted[i] = c;
                out.push(substituted.into_iter().collect());
            }
        }
    }
    if chars.len() < max_len {
        for i in 0..=chars.len() {
            for c in ['a', 'b', 'c'] {
                let mut inserted = chars.clone();
                inserted.insert(i, c);
                out.push(inserted.into_iter().collect());
            }
        }
    }
    out
}

#[test]
fn acceptance_03_similarity_axioms() {
    let start = Instant::now();
    let budget = Duration::from_secs(60);
    let mut rng = Rng::new(0xC3);

    // Pinned oracle values.
    assert!((jaro("MARTHA", "MARHTA") - 0.9444).abs() < 1e-4);
    assert_eq!(soundex_sim("M. Turnbull", "Malcolm Turnbull").unwrap(), 1.0);

    // Property suite: >= 1000 random cases per metric.
    for _ in 0..1000 {
        let a = rng.word(10);
        let b = rng.word(10);
        let c = rng.word(10);

        // Symmetry.
        assert_eq!(levenshtein(&a, &b, false), levenshtein(&b, &a, false));
        assert_eq!(levenshtein(&a, &b, true), levenshtein(&b, &a, true));
        assert!((jaro(&a, &b) - jaro(&b, &a)).abs() < 1e-12);
        assert!((qgram(&a, &b, 2).unwrap() - qgram(&b, &a, 2).unwrap()).abs() < 1e-12);
        assert!((jaccard_tokens(&a, &b) - jaccard_tokens(&b, &a)).abs() < 1e-12);
        assert!((dice_tokens(&a, &b) - dice_tokens(&b, &a)).abs() < 1e-12);

        // Identity.
        assert_eq!(levenshtein(&a, &a, false), 0);
        assert!((jaro(&a, &a) - 1.0).abs() < 1e-12);
        assert!((qgram(&a, &a, 2).unwrap() - 1.0).abs() < 1e-12);
        assert!((jaccard_tokens(&a, &a) - 1.0).abs() < 1e-12);

        // Bounds.
        for v in [
            jaro(&a, &b),
            qgram(&a, &b, 2).unwrap(),
            jaccard_tokens(&a, &b),
            dice_tokens(&a, &b),
            levenshtein_normalized(&a, &b, false),
        ] {
            assert!((0.0..=1.0 + 1e-12).contains(&v), "metric out of bounds: {v}");
        }

        // Levenshtein triangle inequality.
        assert!(
            levenshtein(&a, &c, false)
                <= levenshtein(&a, &b, false) + levenshtein(&b, &c, false)
        );

        // Vector metrics.
        let dim = 1 + rng.below(6);
        let v1 = rng.vector(dim, false);
        let v2 = rng.vector(dim, false);
        let v3 = rng.vector(dim, false);
        assert!((cosine_vec(&v1, &v2).unwrap() - cosine_vec(&v2, &v1).unwrap()).abs() < 1e-12);
        assert!(
            (euclidean(&v1, &v2).unwrap() - euclidean(&v2, &v1).unwrap()).abs() < 1e-12
        );
        assert!(
            euclidean(&v1, &v3).unwrap()
                <= euclidean(&v1, &v2).unwrap() + euclidean(&v2, &v3).unwrap() + 1e-9
        );
        // Scale invariance of cosine.
        let alpha = 0.1 + rng.f64() * 9.9;
        let scaled = NumericVector::new(v1.values().iter().map(|x| x * alpha).collect()).unwrap();
        assert!((cosine_vec(&scaled, &v2).unwrap() - cosine_vec(&v1, &v2).unwrap()).abs() < 1e-9);
        // Cosine of non-negative vectors stays within [0, 1].
        let p1 = rng.vector(dim, true);
        let p2 = rng.vector(dim, true);
        let cos = cosine_vec(&p1, &p2).unwrap();
        assert!((0.0..=1.0 + 1e-12).contains(&cos));
    }

    // Exhaustive edit-script oracle over the full pair space.
    let strings = enumerate_strings(6);
    let ids: HashMap<&str, usize> = strings
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let adjacency: Vec<Vec<u32>> = strings
        .iter()
        .map(|s| {
            edit_neighbours(s, 6)
                .into_iter()
                .map(|n| ids[n.as_str()] as u32)
                .collect()
        })
        .collect();
    for (source_id, source) in strings.iter().enumerate() {
        // BFS over single edits = exhaustive shortest edit script search.
        let mut dist = vec![u32::MAX; strings.len()];
        dist[source_id] = 0;
        let mut queue = std::collections::VecDeque::from([source_id as u32]);
        while let Some(at) = queue.pop_front() {
            for &next in &adjacency[at as usize] {
                if dist[next as usize] == u32::MAX {
                    dist[next as usize] = dist[at as usize] + 1;
                    queue.push_back(next);
                }
            }
        }
        for (target_id, target) in strings.iter().enumerate() {
            assert_eq!(
                levenshtein(source, target, false) as u32,
                dist[target_id],
                "levenshtein({source:?}, {target:?}) disagrees with the edit-script oracle"
            );
        }
    }

    done("C3 similarity metric axioms", start, budget);
}

#[test]
fn acceptance_04_stem_fidelity() {
    let start = Instant::now();
    assert_eq!(stem("friendships").unwrap(), "friend");
    let wordlist = std::fs::read_to_string(fixture("stem_wordlist.txt")).unwrap();
    let words: Vec<&str> = wordlist.lines().filter(|l| !l.is_empty()).collect();
    assert!(words.len() >= 1000, "fixture list has {} words", words.len());
    for word in words {
        let once = stem(word).unwrap();
        let twice = stem(&once).unwrap();
        assert_eq!(once, twice, "stem not idempotent for {word:?}");
    }
    done("C4 stem fidelity + idempotence", start, Duration::from_secs(5));
}

#[test]
fn acceptance_05_synonym_fidelity() {
    let start = Instant::now();
    let lexicon = SynsetLexicon::builtin();
    let syns = synonyms("begin", &lexicon);
    for expected in ["start", "commence"] {
        assert!(syns.iter().any(|s| s == expected), "missing {expected} in {syns:?}");
    }
    done("C5 synonym fidelity", start, Duration::from_secs(1));
}

/// Brute-force position scan: minimal spread per document by trying every
/// assignment of one position per query term.
fn oracle_search(
    docs: &[(String, String)],
    terms: &[String],
    slop: u32,
) -> Vec<(String, u32)> {
    fn min_spread(lists: &[Vec<u32>], chosen: &mut Vec<u32>, best: &mut Option<u32>) {
        if chosen.len() == lists.len() {
            let lo = *chosen.iter().min().unwrap();
            let hi = *chosen.iter().max().unwrap();
            let spread = (hi - lo).saturating_sub(chosen.len() as u32 - 1);
            if best.map_or(true, |b| spread < b) {
                *best = Some(spread);
            }
            return;
        }
        for &p in &lists[chosen.len()] {
            chosen.push(p);
            min_spread(lists, chosen, best);
            chosen.pop();
        }
    }

    let mut hits = Vec::new();
    for (id, text) in docs {
        let tokens = tokenize_all(text);
        let lists: Vec<Vec<u32>> = terms
            .iter()
            .map(|term| {
                tokens
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| t.surface == *term)
                    .map(|(i, _)| i as u32)
                    .collect()
            })
            .collect();
        if lists.iter().any(Vec::is_empty) {
            continue;
        }
        let mut best = None;
        min_spread(&lists, &mut Vec::new(), &mut best);
        let spread = best.expect("all lists non-empty");
        if spread <= slop {
            hits.push((id.clone(), spread));
        }
    }
    hits.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    hits
}

#[test]
fn acceptance_06_index_oracle_equivalence() {
    let start = Instant::now();
    let vocab = [
        "mental", "health", "open", "data", "index", "query", "graph", "tweet", "curate", "link",
        "word", "score",
    ];
    let mut rng = Rng::new(0xC6);
    for round in 0..100 {
        let doc_count = 1 + rng.below(50);
        let docs: Vec<(String, String)> = (0..doc_count)
            .map(|i| {
                let len = 1 + rng.below(30);
                let text: Vec<&str> = (0..len).map(|_| vocab[rng.below(vocab.len())]).collect();
                (format!("d{i:02}"), text.join(" "))
            })
            .collect();
        let documents: Vec<Document> = docs
            .iter()
            .map(|(id, text)| Document::new(id.clone(), text.clone()))
            .collect();
        let index = InvertedIndex::build(&documents, &StopwordList::empty()).unwrap();

        for _ in 0..5 {
            let term_count = 1 + rng.below(3);
            let mut terms: Vec<String> = Vec::new();
            while terms.len() < term_count {
                let term = vocab[rng.below(vocab.len())].to_string();
                if !terms.contains(&term) {
                    terms.push(term);
                }
            }
            let slop = rng.below(4) as u32;
            let query = SlopQuery::new(terms.clone(), slop);
            let got: Vec<(String, u32)> = search(&query, &index)
                .unwrap()
                .into_iter()
                .map(|h| (h.doc_id, h.spread))
                .collect();
            let expected = oracle_search(&docs, &terms, slop);
            assert_eq!(got, expected, "round {round}: query {terms:?} slop {slop}");

            // Monotonicity in slop.
            let wider: Vec<String> = search(&SlopQuery::new(terms.clone(), slop + 1), &index)
                .unwrap()
                .into_iter()
                .map(|h| h.doc_id)
                .collect();
            for (doc_id, _) in &got {
                assert!(wider.contains(doc_id), "slop monotonicity violated for {doc_id}");
            }
        }
    }
    done("C6 index oracle equivalence", start, Duration::from_secs(60));
}

/// Independent kNN: repeated linear min-extraction plus explicit
/// first-max voting.
fn oracle_knn(
    train: &[(Vec<f64>, usize)],
    classes: usize,
    test: &[f64],
    k: usize,
) -> (usize, f64) {
    let mut dists: Vec<(f64, usize)> = train
        .iter()
        .enumerate()
        .map(|(i, (point, _))| {
            let d: f64 = point
                .iter()
                .zip(test)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            (d, i)
        })
        .collect();
    let mut votes = vec![0usize; classes];
    for _ in 0..k {
        let best = dists
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.0.partial_cmp(&b.0).unwrap().then_with(|| a.1.cmp(&b.1))
            })
            .map(|(slot, _)| slot)
            .unwrap();
        let (_, train_idx) = dists.remove(best);
        votes[train[train_idx].1] += 1;
    }
    let mut winner = 0;
    for (c, v) in votes.iter().enumerate() {
        if *v > votes[winner] {
            winner = c;
        }
    }
    (winner, votes[winner] as f64 / k as f64)
}

fn numeric_dataset(points: &[(Vec<f64>, usize)], dims: usize, classes: usize) -> ArffDataset {
    let class_values: Vec<String> = (0..classes).map(|c| format!("c{c}")).collect();
    let mut attributes: Vec<ArffAttribute> = (0..dims)
        .map(|d| ArffAttribute {
            name: format!("x{d}"),
            kind: AttrKind::Numeric,
        })
        .collect();
    attributes.push(ArffAttribute {
        name: "class".to_string(),
        kind: AttrKind::Nominal(class_values.clone()),
    });
    let instances = points
        .iter()
        .map(|(values, class)| {
            let mut row: Vec<ArffValue> = values.iter().map(|v| ArffValue::Numeric(*v)).collect();
            row.push(ArffValue::Nominal(class_values[*class].clone()));
            row
        })
        .collect();
    ArffDataset {
        relation: "random".to_string(),
        attributes,
        instances,
    }
}

#[test]
fn acceptance_07_classifier_oracles() {
    let start = Instant::now();

    // Hand-computed smoothed posteriors: sunny -> yes, 0.30 vs 0.24.
    let train = curata_core::classify::parse_arff_str(
        "@RELATION w\n@ATTRIBUTE outlook {sunny,rainy}\n@ATTRIBUTE play {yes,no}\n@DATA\nsunny,yes\nsunny,yes\nrainy,no\nrainy,no\nsunny,no\n",
    )
    .unwrap();
    let model = train_nb(&train).unwrap();
    let row = vec![ArffValue::Nominal("sunny".into()), ArffValue::Missing];
    let logs = model.log_posteriors(&row).unwrap();
    assert!((logs[0] - 0.30f64.ln()).abs() < 1e-9, "log posterior yes");
    assert!((logs[1] - 0.24f64.ln()).abs() < 1e-9, "log posterior no");
    let test = curata_core::classify::parse_arff_str(
        "@RELATION w\n@ATTRIBUTE outlook {sunny,rainy}\n@ATTRIBUTE play {yes,no}\n@DATA\nsunny,?\n",
    )
    .unwrap();
    assert_eq!(predict_nb(&model, &test).unwrap()[0].label, "yes");

    // kNN equals the brute-force oracle on 200 random small datasets.
    let mut rng = Rng::new(0xC7);
    for round in 0..200 {
        let dims = 1 + rng.below(3);
        let classes = 2 + rng.below(2);
        let n = 3 + rng.below(18);
        let points: Vec<(Vec<f64>, usize)> = (0..n)
            .map(|_| {
                let values: Vec<f64> = (0..dims).map(|_| (rng.f64() * 10.0 * 4.0).round() / 4.0).collect();
                (values, rng.below(classes))
            })
            .collect();
        let train_ds = numeric_dataset(&points, dims, classes);
        let test_point: Vec<f64> = (0..dims).map(|_| (rng.f64() * 10.0 * 4.0).round() / 4.0).collect();
        let test_ds = {
            let mut ds = numeric_dataset(&[(test_point.clone(), 0)], dims, classes);
            let class_index = ds.class_index();
            ds.instances[0][class_index] = ArffValue::Missing;
            ds
        };
        let k = 1 + rng.below(5.min(n));
        let got = &knn_predict(&train_ds, &test_ds, k).unwrap()[0];
        let (expected_class, expected_confidence) = oracle_knn(&points, classes, &test_point, k);
        assert_eq!(
            got.label,
            format!("c{expected_class}"),
            "round {round}: k={k} points={points:?} test={test_point:?}"
        );
        assert!((got.confidence - expected_confidence).abs() < 1e-12);
    }

    // Hand-counted confusion example.
    let predicted: Vec<String> = ["A", "A", "B", "B"].iter().map(|s| s.to_string()).collect();
    let actual: Vec<String> = ["A", "B", "B", "B"].iter().map(|s| s.to_string()).collect();
    let report = evaluate(&predicted, &actual).unwrap();
    assert!((report.accuracy - 0.75).abs() < 1e-12);
    assert!((report.precision - 0.75).abs() < 1e-12);

    done("C7 classifier oracles", start, Duration::from_secs(30));
}

#[test]
fn acceptance_08_round_trips() {
    let start = Instant::now();

    // ARFF: parse . write . parse identity on the fixture files.
    for name in ["arff/weather_train.arff", "arff/weather_test.arff", "arff/points_train.arff"] {
        let ds = parse_arff(fixture(name)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.arff");
        curata_core::classify::write_arff(&ds, &path).unwrap();
        let again = parse_arff(&path).unwrap();
        assert_eq!(ds, again, "round trip of {name}");
    }

    // Index: persist . load identity, checked structurally and by search.
    let docs: Vec<Document> = [
        ("d1", "mental health is important. Sleep helps!"),
        ("d2", "health of mental patients"),
        ("d3", "mental illness awareness"),
    ]
    .iter()
    .map(|(id, text)| Document::new(*id, *text))
    .collect();
    let index = InvertedIndex::build(&docs, &StopwordList::english()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("idx.bin");
    index.persist(&path).unwrap();
    let loaded = InvertedIndex::load(&path).unwrap();
    assert_eq!(index, loaded);
    for (query, slop) in [("mental health", 0), ("mental health", 2), ("sleep", 1)] {
        let q = SlopQuery::parse(query, slop);
        assert_eq!(search(&q, &index).unwrap(), search(&q, &loaded).unwrap());
    }

    done("C8 ARFF and index round-trips", start, Duration::from_secs(10));
}

#[test]
fn acceptance_09_offline_linking() {
    let start = Instant::now();

    /// Counts every network call; the criterion requires zero.
    struct CountingTransport(std::sync::atomic::AtomicUsize);
    impl Transport for CountingTransport {
        fn get(&self, url: &str, _t: Duration) -> Result<String, LinkError> {
            self.0.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
            Err(LinkError::Transport {
                url: url.to_string(),
                message: "network forbidden".to_string(),
            })
        }
    }

    let counter = std::sync::Arc::new(CountingTransport(std::sync::atomic::AtomicUsize::new(0)));
    struct Shared(std::sync::Arc<CountingTransport>);
    impl Transport for Shared {
        fn get(&self, url: &str, t: Duration) -> Result<String, LinkError> {
            self.0.get(url, t)
        }
    }
    let client = KbClient::new(
        KbClientConfig::offline(fixture("kb")),
        Box::new(Shared(counter.clone())),
    );

    let candidates = client.lookup_wikidata("M. Turnbull").unwrap();
    assert!(!candidates.is_empty());
    let kept = link_entity("M. Turnbull", &candidates, LinkMetric::Jaro, 0.7).unwrap();
    assert_eq!(kept[0].entity.label, "Malcolm Turnbull");
    assert!(kept[0].score > 0.7);
    assert_eq!(
        counter.0.load(std::sync::atomic::Ordering::SeqCst),
        0,
        "offline mode performed network operations"
    );

    done("C9 offline linking", start, Duration::from_secs(5));
}

fn run_curata(args: &[&str]) -> std::process::Output {
    let exe = env!("CARGO_BIN_EXE_curata");
    Command::new(exe)
        .args(args)
        .output()
        .expect("curata binary runs")
}

#[test]
fn acceptance_10_end_to_end_determinism() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let tweets = fixture("tweets50.jsonl");
    let resources = fixture("resources");
    let kb = fixture("kb");
    let gazetteer = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/resources/gazetteer.tsv");

    let out1 = dir.path().join("result1.xml");
    let out2 = dir.path().join("result2.xml");
    for out in [&out1, &out2] {
        let output = run_curata(&[
            "pipeline",
            "--in",
            tweets.to_str().unwrap(),
            "--gazetteer",
            gazetteer.to_str().unwrap(),
            "--resources",
            resources.to_str().unwrap(),
            "--offline-kb",
            kb.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(
            output.status.success(),
            "pipeline failed: {}",
            String::from_utf8_lossy(&output.stderr)
        );
    }
    let bytes1 = std::fs::read(&out1).unwrap();
    let bytes2 = std::fs::read(&out2).unwrap();
    assert_eq!(bytes1, bytes2, "result.xml differs across runs");

    let xml = String::from_utf8(bytes1).unwrap();
    if let Err(errors) = validate_result_xml(&xml) {
        panic!("result.xml schema violations: {errors:#?}");
    }

    // Graph path query over the JSON form of the same run.
    let records = dir.path().join("records.json");
    let output = run_curata(&[
        "pipeline",
        "--in",
        tweets.to_str().unwrap(),
        "--gazetteer",
        gazetteer.to_str().unwrap(),
        "--resources",
        resources.to_str().unwrap(),
        "--offline-kb",
        kb.to_str().unwrap(),
        "--out",
        records.to_str().unwrap(),
    ]);
    assert!(output.status.success());

    let output = run_curata(&[
        "graph",
        "paths",
        "--records",
        records.to_str().unwrap(),
        "--from",
        "user1",
        "--to",
        "user2",
        "--max-len",
        "4",
    ]);
    assert!(
        output.status.success(),
        "graph paths failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(
        stdout.contains(
            "user:user1 -> tweet:t01 -> hashtag:mentalhealth -> tweet:t02 -> user:user2"
        ),
        "hashtag-mediated path missing from:\n{stdout}"
    );

    done("C10 end-to-end determinism", start, Duration::from_secs(30));
}
