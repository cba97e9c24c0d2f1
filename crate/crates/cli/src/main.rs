//! curata: command-line front end for the curation toolkit.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use curata_core::classify::{
    evaluate, knn_predict, parse_arff, predict_nb, train_nb, Prediction,
};
use curata_core::html::{
    extract_anchor_texts, extract_headings, extract_image_alts, extract_list_texts,
    extract_paragraphs, extract_title, fetch, parse as parse_html, FixtureFetcher, HttpFetcher,
};
use curata_core::index::{search, InvertedIndex, SlopQuery};
use curata_core::lexical::{
    extract_phrases, extract_pos_class, extract_quotation, stem, synonyms, synonyms_text,
    tag_pos, PosLexicon, PosTag, SynsetLexicon,
};
use curata_core::linking::{KbClient, Provider};
use curata_core::ner::{extract_entities, EntityType, Gazetteer};
use curata_core::pipeline::{
    build_graph, enrich, find_paths, ingest, read_records_json, write_records, OutputFormat,
    Resources,
};
use curata_core::similarity::{
    batch_vector, cosine_vec, dice_tokens, euclidean, hamming, jaccard_tokens, jaro, levenshtein,
    levenshtein_normalized, qgram, soundex, soundex_sim, BatchInput, BatchMetric, NumericVector,
    VectorFile,
};
use curata_core::text::{tokenize, Document, StopwordList};

#[derive(Parser)]
#[command(name = "curata", version, about = "Curate raw text records: extract, link, classify, index")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract named entities from text or a file
    Ner(NerArgs),
    /// Tag parts of speech, extract word classes, phrases or quotations
    Pos(PosArgs),
    /// Stem a word or every token of a text
    Stem(StemArgs),
    /// Look up synonyms or hypernyms
    Syn(SynArgs),
    /// Fetch/parse HTML and extract one field
    Url(UrlArgs),
    /// Compute a similarity score
    Sim(SimArgs),
    /// Build or search a positional inverted index
    #[command(subcommand)]
    Index(IndexCommand),
    /// Train/apply classifiers on ARFF files, or evaluate predictions
    #[command(subcommand)]
    Classify(ClassifyCommand),
    /// Query a knowledge base
    Link(LinkArgs),
    /// Run the full enrichment pipeline over a JSONL file
    Pipeline(PipelineArgs),
    /// Query the entity graph built from enriched records
    #[command(subcommand)]
    Graph(GraphCommand),
}

#[derive(Args)]
struct NerArgs {
    /// Gazetteer file (tab-delimited surface/type per line)
    #[arg(long)]
    gazetteer: PathBuf,
    /// Only emit entities of this type
    #[arg(long = "type")]
    entity_type: Option<String>,
    #[arg(long, conflicts_with = "file")]
    text: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct PosArgs {
    #[arg(long, conflicts_with = "file")]
    text: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
    /// Word lexicon TSV (word, tags); default: built-in
    #[arg(long, requires = "suffixes")]
    lexicon: Option<PathBuf>,
    /// Suffix rules TSV (suffix, tag)
    #[arg(long, requires = "lexicon")]
    suffixes: Option<PathBuf>,
    /// Filter to one class: noun, verb, adj or adv
    #[arg(long, conflicts_with_all = ["phrases", "quotes"])]
    class: Option<String>,
    /// Emit NP/VP chunks instead of tags
    #[arg(long)]
    phrases: bool,
    /// Tag only the text between double quotes
    #[arg(long)]
    quotes: bool,
}

#[derive(Args)]
struct StemArgs {
    #[arg(long, conflicts_with = "text")]
    word: Option<String>,
    #[arg(long)]
    text: Option<String>,
}

#[derive(Args)]
struct SynArgs {
    #[arg(long, conflicts_with = "text")]
    word: Option<String>,
    #[arg(long)]
    text: Option<String>,
    /// Emit hypernyms instead of synonyms (word mode only)
    #[arg(long)]
    hypernyms: bool,
    /// Synset lexicon TSV; default: built-in
    #[arg(long)]
    synsets: Option<PathBuf>,
}

#[derive(Args)]
struct UrlArgs {
    #[arg(long, conflicts_with = "html_file")]
    url: Option<String>,
    #[arg(long)]
    html_file: Option<PathBuf>,
    /// Offline fixture directory for --url
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// title, headings, paragraphs, anchors, alts or lists
    #[arg(long)]
    field: String,
}

#[derive(Args)]
struct SimArgs {
    /// levenshtein, damerau, jaro, soundex, qgram, jaccard, dice,
    /// cosine, euclidean or hamming
    metric: String,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    /// Primary vector, comma-separated (numeric metrics)
    #[arg(long)]
    vec: Option<String>,
    /// Second vector for vector_vector mode
    #[arg(long)]
    vec2: Option<String>,
    /// Vector file: one comma-separated vector per line
    #[arg(long)]
    vec_file: Option<PathBuf>,
    /// vector_vector, vector_vectors or vectors_all_pairs
    #[arg(long)]
    mode: Option<String>,
    /// q-gram length
    #[arg(long, default_value_t = 2)]
    q: usize,
}

#[derive(Subcommand)]
enum IndexCommand {
    /// Index documents from JSONL ({"id":..,"text":..} per line)
    Build {
        #[arg(long)]
        docs: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Stopword list (one word per line); default: built-in English
        #[arg(long)]
        stopwords: Option<PathBuf>,
    },
    /// Search a persisted index
    Search {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        query: String,
        #[arg(long, default_value_t = 0)]
        slop: u32,
    },
}

#[derive(Subcommand)]
enum ClassifyCommand {
    /// Naive Bayes: train on one ARFF file, classify another
    Nb {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// k-nearest neighbours
    Knn {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Compare predicted labels against actual labels (one per line)
    Eval {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        actual: PathBuf,
    },
}

#[derive(Args)]
struct LinkArgs {
    /// wikidata, gkg or conceptnet
    provider: String,
    query: String,
    /// Offline fixture directory (provider subdir with encoded-query.json files)
    #[arg(long)]
    offline: Option<PathBuf>,
    /// Max ConceptNet edges
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// ConceptNet: list PartOf tails instead of edges
    #[arg(long)]
    part_of: bool,
    /// ConceptNet: list weighted associations instead of edges
    #[arg(long)]
    assoc: bool,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    gazetteer: Option<PathBuf>,
    /// Directory of dictionaries/lexicons and optional html/ fixtures
    #[arg(long)]
    resources: Option<PathBuf>,
    /// Keep only records whose text contains this keyword
    #[arg(long)]
    keyword: Option<String>,
    /// Keep at most this many records
    #[arg(long)]
    limit: Option<usize>,
    /// Offline knowledge-base fixture directory
    #[arg(long = "offline-kb")]
    offline_kb: Option<PathBuf>,
    /// Output path; .json selects JSON, anything else XML
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// All simple paths between two users
    Paths {
        /// records.json produced by `curata pipeline`
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ner(args) => run_ner(args),
        Command::Pos(args) => run_pos(args),
        Command::Stem(args) => run_stem(args),
        Command::Syn(args) => run_syn(args),
        Command::Url(args) => run_url(args),
        Command::Sim(args) => run_sim(args),
        Command::Index(cmd) => run_index(cmd),
        Command::Classify(cmd) => run_classify(cmd),
        Command::Link(args) => run_link(args),
        Command::Pipeline(args) => run_pipeline(args),
        Command::Graph(cmd) => run_graph(cmd),
    }
}

fn read_input(text: Option<String>, file: Option<PathBuf>) -> Result<String> {
    match (text, file) {
        (Some(text), None) => Ok(text),
        (None, Some(path)) => std::fs::read_to_string(&path)
            .with_context(|| format!("reading {}", path.display())),
        _ => bail!("provide exactly one of --text or --file"),
    }
}

fn run_ner(args: NerArgs) -> Result<()> {
    let gazetteer = Gazetteer::load(&args.gazetteer)?;
    if gazetteer.warnings() > 0 {
        eprintln!("warning: {} gazetteer lines skipped", gazetteer.warnings());
    }
    let text = read_input(args.text, args.file)?;
    let wanted = args
        .entity_type
        .map(|t| EntityType::from_str(&t).map_err(|e| anyhow!(e)))
        .transpose()?;
    let mut stdout = std::io::stdout().lock();
    for entity in extract_entities(&text, &gazetteer) {
        if wanted.is_some_and(|t| t != entity.ner) {
            continue;
        }
        writeln!(
            stdout,
            "{}\t{}\t{}\t{}",
            entity.word, entity.ner, entity.start, entity.end
        )?;
    }
    Ok(())
}

fn load_pos_lexicon(lexicon: Option<PathBuf>, suffixes: Option<PathBuf>) -> Result<PosLexicon> {
    match (lexicon, suffixes) {
        (Some(words), Some(rules)) => Ok(PosLexicon::from_files(words, rules)?),
        _ => Ok(PosLexicon::builtin()),
    }
}

fn run_pos(args: PosArgs) -> Result<()> {
    let lexicon = load_pos_lexicon(args.lexicon, args.suffixes)?;
    let text = read_input(args.text, args.file)?;
    let mut stdout = std::io::stdout().lock();
    if args.phrases {
        for chunk in extract_phrases(&text, &lexicon).chunks {
            let words: Vec<&str> = chunk.tokens.iter().map(|t| t.word_part.as_str()).collect();
            writeln!(stdout, "{}\t{}", chunk.label, words.join(" "))?;
        }
        return Ok(());
    }
    if let Some(class) = args.class {
        let class = PosTag::from_str(&class).map_err(|e| anyhow!(e))?;
        for word in extract_pos_class(&text, &lexicon, class)? {
            writeln!(stdout, "{word}")?;
        }
        return Ok(());
    }
    let tagged = if args.quotes {
        extract_quotation(&text, &lexicon)
    } else {
        tag_pos(&text, &lexicon)
    };
    for token in tagged {
        writeln!(stdout, "{}\t{}", token.word_part, token.tag)?;
    }
    Ok(())
}

fn run_stem(args: StemArgs) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    match (args.word, args.text) {
        (Some(word), None) => {
            writeln!(stdout, "{}", stem(&word)?)?;
        }
        (None, Some(text)) => {
            for token in tokenize(&text, &StopwordList::empty()) {
                writeln!(stdout, "{}\t{}", token.surface, stem(&token.surface)?)?;
            }
        }
        _ => bail!("provide exactly one of --word or --text"),
    }
    Ok(())
}

fn run_syn(args: SynArgs) -> Result<()> {
    let lexicon = match args.synsets {
        Some(path) => SynsetLexicon::from_file(path)?,
        None => SynsetLexicon::builtin(),
    };
    let mut stdout = std::io::stdout().lock();
    match (args.word, args.text) {
        (Some(word), None) => {
            let found = if args.hypernyms {
                curata_core::lexical::hypernyms(&word, &lexicon)
            } else {
                synonyms(&word, &lexicon)
            };
            for item in found {
                writeln!(stdout, "{item}")?;
            }
        }
        (None, Some(text)) => {
            for (word, syns) in synonyms_text(&text, &lexicon) {
                writeln!(stdout, "{word}\t{}", syns.join(","))?;
            }
        }
        _ => bail!("provide exactly one of --word or --text"),
    }
    Ok(())
}

fn run_url(args: UrlArgs) -> Result<()> {
    let html = match (args.url, args.html_file) {
        (Some(url), None) => match args.fixtures {
            Some(dir) => fetch(&url, &FixtureFetcher::new(dir))?,
            None => fetch(&url, &HttpFetcher::from_env())?,
        },
        (None, Some(path)) => std::fs::read_to_string(&path)
            .with_context(|| format!("reading {}", path.display()))?,
        _ => bail!("provide exactly one of --url or --html-file"),
    };
    let doc = parse_html(&html);
    let mut stdout = std::io::stdout().lock();
    let lines: Vec<String> = match args.field.as_str() {
        "title" => extract_title(&doc).into_iter().collect(),
        "headings" => extract_headings(&doc)
            .into_iter()
            .map(|h| format!("h{}\t{}", h.level, h.text))
            .collect(),
        "paragraphs" => extract_paragraphs(&doc),
        "anchors" => extract_anchor_texts(&doc),
        "alts" => extract_image_alts(&doc),
        "lists" => extract_list_texts(&doc),
        other => bail!(
            "unknown field {other:?} (expected title, headings, paragraphs, anchors, alts or lists)"
        ),
    };
    for line in lines {
        writeln!(stdout, "{line}")?;
    }
    Ok(())
}

fn run_sim(args: SimArgs) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    let metric = args.metric.to_ascii_lowercase();

    // Vector modes: anything with --vec or --vec-file.
    if args.vec.is_some() || args.vec_file.is_some() {
        let batch_metric =
            BatchMetric::from_str(&metric).map_err(|e| anyhow!(e.to_string()))?;
        let primary = args.vec.as_deref().map(NumericVector::parse).transpose()?;
        let results = match (args.mode.as_deref(), &primary, args.vec2.as_deref(), &args.vec_file) {
            (Some("vector_vector") | None, Some(a), Some(b), None) => {
                let b = NumericVector::parse(b)?;
                batch_vector(batch_metric, BatchInput::VectorVector(a, &b))?
            }
            (Some("vector_vectors") | None, Some(a), None, Some(path)) => {
                let file = VectorFile::load(path)?;
                batch_vector(batch_metric, BatchInput::VectorVectors(a, &file))?
            }
            (Some("vectors_all_pairs") | None, None, None, Some(path)) => {
                let file = VectorFile::load(path)?;
                batch_vector(batch_metric, BatchInput::VectorsAllPairs(&file))?
            }
            _ => bail!(
                "vector modes: --vec A --vec2 B (vector_vector), --vec A --vec-file P \
                 (vector_vectors), or --vec-file P (vectors_all_pairs)"
            ),
        };
        for r in results {
            writeln!(stdout, "{}\t{}\t{}", r.left, r.right, r.score)?;
        }
        return Ok(());
    }

    let a = args.a.ok_or_else(|| anyhow!("--a is required for string metrics"))?;
    let b = args.b.ok_or_else(|| anyhow!("--b is required for string metrics"))?;
    let score = match metric.as_str() {
        "levenshtein" => levenshtein(&a, &b, false) as f64,
        "levenshtein_norm" => levenshtein_normalized(&a, &b, false),
        "damerau" => levenshtein(&a, &b, true) as f64,
        "jaro" => jaro(&a, &b),
        "soundex" => {
            writeln!(stdout, "{a}\t{}", soundex(&a)?)?;
            writeln!(stdout, "{b}\t{}", soundex(&b)?)?;
            soundex_sim(&a, &b)?
        }
        "qgram" => qgram(&a, &b, args.q)?,
        "jaccard" => jaccard_tokens(&a, &b),
        "dice" => dice_tokens(&a, &b),
        "hamming" => hamming(&a, &b)? as f64,
        "cosine" | "euclidean" => {
            let (va, vb) = (NumericVector::parse(&a)?, NumericVector::parse(&b)?);
            if metric == "cosine" {
                cosine_vec(&va, &vb)?
            } else {
                euclidean(&va, &vb)?
            }
        }
        other => bail!("unknown metric {other:?}"),
    };
    writeln!(stdout, "{a}\t{b}\t{score}")?;
    Ok(())
}

fn run_index(cmd: IndexCommand) -> Result<()> {
    match cmd {
        IndexCommand::Build { docs, out, stopwords } => {
            let stopwords = match stopwords {
                Some(path) => StopwordList::from_file(path)?,
                None => StopwordList::english(),
            };
            let raw = std::fs::read_to_string(&docs)
                .with_context(|| format!("reading {}", docs.display()))?;
            let mut documents = Vec::new();
            for (lineno, line) in raw.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let value: serde_json::Value = serde_json::from_str(line)
                    .with_context(|| format!("{}:{}", docs.display(), lineno + 1))?;
                let id = value
                    .get("id")
                    .and_then(|v| {
                        v.as_str()
                            .map(String::from)
                            .or_else(|| v.as_i64().map(|n| n.to_string()))
                    })
                    .ok_or_else(|| anyhow!("{}:{}: missing id", docs.display(), lineno + 1))?;
                let text = value
                    .get("text")
                    .and_then(serde_json::Value::as_str)
                    .ok_or_else(|| anyhow!("{}:{}: missing text", docs.display(), lineno + 1))?;
                documents.push(Document::new(id, text));
            }
            let index = InvertedIndex::build(&documents, &stopwords)?;
            index.persist(&out)?;
            eprintln!(
                "indexed {} documents, {} terms -> {}",
                index.doc_count(),
                index.term_count(),
                out.display()
            );
            Ok(())
        }
        IndexCommand::Search { index, query, slop } => {
            let index = InvertedIndex::load(&index)?;
            let hits = search(&SlopQuery::parse(&query, slop), &index)?;
            let mut stdout = std::io::stdout().lock();
            for hit in hits {
                writeln!(stdout, "{}\t{}\t{}", hit.doc_id, hit.spread, hit.sentence)?;
            }
            Ok(())
        }
    }
}

fn write_predictions(predictions: &[Prediction], out: &PathBuf) -> Result<()> {
    let mut body = String::new();
    for p in predictions {
        body.push_str(&format!("{}\t{}\t{}\n", p.index, p.label, p.confidence));
    }
    std::fs::write(out, body).with_context(|| format!("writing {}", out.display()))
}

fn run_classify(cmd: ClassifyCommand) -> Result<()> {
    match cmd {
        ClassifyCommand::Nb { train, test, out } => {
            let model = train_nb(&parse_arff(&train)?)?;
            let predictions = predict_nb(&model, &parse_arff(&test)?)?;
            write_predictions(&predictions, &out)
        }
        ClassifyCommand::Knn { train, test, out, k } => {
            let predictions = knn_predict(&parse_arff(&train)?, &parse_arff(&test)?, k)?;
            write_predictions(&predictions, &out)
        }
        ClassifyCommand::Eval { pred, actual } => {
            let read_labels = |path: &PathBuf| -> Result<Vec<String>> {
                Ok(std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?
                    .lines()
                    .map(|l| l.trim().to_string())
                    .filter(|l| !l.is_empty())
                    .collect())
            };
            let report = evaluate(&read_labels(&pred)?, &read_labels(&actual)?)?;
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "accuracy\t{}", report.accuracy)?;
            writeln!(stdout, "precision\t{}", report.precision)?;
            writeln!(stdout, "recall\t{}", report.recall)?;
            for (class, counts) in &report.per_class {
                writeln!(
                    stdout,
                    "class\t{class}\ttp={}\tfp={}\tfn={}",
                    counts.true_pos, counts.false_pos, counts.false_neg
                )?;
            }
            Ok(())
        }
    }
}

fn run_link(args: LinkArgs) -> Result<()> {
    let provider = Provider::from_str(&args.provider).map_err(|e| anyhow!(e))?;
    let client = match args.offline {
        Some(dir) => KbClient::offline(dir),
        None => KbClient::live(),
    };
    let mut stdout = std::io::stdout().lock();
    match provider {
        Provider::Wikidata | Provider::GoogleKg => {
            let entities = if provider == Provider::Wikidata {
                client.lookup_wikidata(&args.query)?
            } else {
                client.lookup_google_kg(&args.query)?
            };
            writeln!(stdout, "{}", serde_json::to_string_pretty(&entities)?)?;
        }
        Provider::ConceptNet => {
            if args.part_of {
                for concept in client.conceptnet_part_of(&args.query)? {
                    writeln!(stdout, "{concept}")?;
                }
            } else if args.assoc {
                for (concept, weight) in client.conceptnet_association(&args.query)? {
                    writeln!(stdout, "{concept}\t{weight}")?;
                }
            } else {
                for edge in client.conceptnet_lookup(&args.query, args.count)? {
                    writeln!(
                        stdout,
                        "{}\t{}\t{}\t{}",
                        edge.start, edge.rel, edge.end, edge.weight
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn run_pipeline(args: PipelineArgs) -> Result<()> {
    let mut resources = match &args.resources {
        Some(dir) => Resources::from_dir(dir)?,
        None => Resources::builtin(),
    };
    if let Some(path) = &args.gazetteer {
        resources.gazetteer = Gazetteer::load(path)?;
    }
    if let Some(dir) = args.offline_kb {
        resources.kb = Some(KbClient::offline(dir));
    }
    let report = ingest(&args.input, args.keyword.as_deref(), args.limit)?;
    if report.skipped > 0 {
        eprintln!("warning: {} malformed lines skipped", report.skipped);
    }
    let records: Vec<_> = report
        .records
        .iter()
        .map(|tweet| enrich(tweet, &resources))
        .collect();
    let format = OutputFormat::from_path(&args.out);
    write_records(&records, format, &args.out)?;
    eprintln!("wrote {} records -> {}", records.len(), args.out.display());
    Ok(())
}

fn run_graph(cmd: GraphCommand) -> Result<()> {
    match cmd {
        GraphCommand::Paths { records, from, to, max_len } => {
            let records = read_records_json(&records)?;
            let graph = build_graph(&records);
            let mut stdout = std::io::stdout().lock();
            for path in find_paths(&graph, &from, &to, max_len)? {
                writeln!(stdout, "{}", path.join(" -> "))?;
            }
            Ok(())
        }
    }
}
