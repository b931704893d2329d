use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use stacksort::enumeration::{
    count_fast_sortable, count_slow_sortable, generating_tree_level_counts, sortable_table,
    sortable_table_csv, GenTreeSpec, SortableCounter, SuccessionRule,
};
use stacksort::explorer::{
    self, fertility_demo, find_exceptional, gap_census, scan_conjectures, timed,
    uniform_fertility_scan, uniform_report, verify_exceptional_pattern_claim, ScanConfig,
};
use stacksort::sorters::{distance, iterate};
use stacksort::vhc::{
    brute_preimages, catalan_product, count_preimages, enumerate_vhc,
    induced_coloring, induced_composition, preimages_via_trees,
};
use stacksort::{ContentVector, Error, Limits, SortVariant, VhcFilter, Word};

const CACHE_ENV: &str = "STACKSORT_CACHE";

#[derive(Parser, Debug)]
#[command(name = "stacksort", version, about = "Stack-sorting operators on words")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Worker threads for exhaustive scans (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Longest word accepted by brute-force enumeration.
    #[arg(long, global = true, default_value_t = Limits::default().max_word_len)]
    max_word_len: usize,
    /// Largest |W_c| a brute-force scan will walk.
    #[arg(long, global = true, default_value_t = Limits::default().max_space)]
    max_space: u128,
    /// Longest length for scans over all normalized words.
    #[arg(long, global = true, default_value_t = Limits::default().max_normalized_len)]
    max_normalized_len: usize,
    /// Longest word for hook-configuration enumeration.
    #[arg(long, global = true, default_value_t = Limits::default().max_vhc_len)]
    max_vhc_len: usize,
    /// Memo cache file for the sortable-word recurrences.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache: Option<PathBuf>,
}

impl Global {
    fn limits(&self) -> Limits {
        Limits {
            max_word_len: self.max_word_len,
            max_space: self.max_space,
            max_normalized_len: self.max_normalized_len,
            max_vhc_len: self.max_vhc_len,
        }
    }

    fn scan(&self) -> ScanConfig {
        ScanConfig::new(self.limits(), self.jobs)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Map {
    Fast,
    Slow,
}

impl From<Map> for SortVariant {
    fn from(m: Map) -> Self {
        match m {
            Map::Fast => SortVariant::Fast,
            Map::Slow => SortVariant::Slow,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Vhc,
    Brute,
    Trees,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply an operator, optionally several times.
    Sort {
        word: String,
        #[arg(long, value_enum)]
        map: Map,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Print every word of the chain.
        #[arg(long)]
        trace: bool,
    },
    /// Number of passes each operator needs to sort the word.
    Distance { word: String },
    /// Count (and optionally list) the preimages of a word.
    Preimages {
        word: String,
        #[arg(long, value_enum)]
        map: Map,
        #[arg(long, value_enum, default_value_t = Method::Vhc)]
        method: Method,
        #[arg(long)]
        list: bool,
    },
    /// Enumerate valid hook configurations.
    Vhc {
        word: String,
        /// all, binary, R or L.
        #[arg(long, default_value = "all")]
        filter: VhcFilter,
        #[arg(long)]
        show_coloring: bool,
    },
    /// Number of sortable words of the given content.
    CountSortable {
        #[arg(long, value_enum)]
        map: Map,
        #[arg(required = true)]
        counts: Vec<usize>,
    },
    /// M and N for every content vector up to a total.
    SortableTable {
        #[arg(long)]
        max_total: usize,
    },
    /// Number of uniform sortable words, by the closed formula.
    Uniform {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        n: usize,
        /// Cross-check against every other counting method.
        #[arg(long)]
        check: bool,
    },
    /// Level sizes of a generating tree.
    Gentree {
        /// Root label; named rules supply their own.
        #[arg(long)]
        axiom: Option<u64>,
        /// fibonacci, catalan, fuss:ELL, or inline such as "1->2;2->1,2".
        #[arg(long)]
        rule: SuccessionRule,
        #[arg(long)]
        depth: usize,
    },
    /// Words that slow sorts in fewer passes than fast, for each length.
    Exceptional {
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        list: bool,
    },
    /// Words whose fast distance exceeds the slow one by a given gap.
    GapCensus {
        #[arg(long)]
        len: usize,
        #[arg(long, allow_hyphen_values = true)]
        gap: i64,
    },
    /// Exhaustive checks of the conjectured distance bounds.
    Conjectures {
        #[arg(long)]
        max_len: usize,
    },
    /// Check that exceptional words contain one of length 7.
    PatternClaim {
        #[arg(long)]
        len: usize,
    },
    /// Fertility of the xi words by every method.
    FertilityDemo {
        #[arg(long)]
        m: usize,
    },
    /// Fertility values attained by uniform words.
    UniformScan {
        #[arg(long, default_value_t = 2)]
        ell: usize,
        #[arg(long)]
        max_n: usize,
    },
}

fn big(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn words_json(ws: &[Word]) -> Value {
    Value::Array(ws.iter().map(|w| json!(w.to_string())).collect())
}

/// What a command produced: a JSON value plus its plain-text rendering and,
/// where it makes sense, a CSV one.
struct Output {
    json: Value,
    plain: String,
    csv: Option<String>,
}

impl Output {
    fn new(json: Value, plain: impl Into<String>) -> Self {
        Output {
            json,
            plain: plain.into(),
            csv: None,
        }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    fn render(&self, format: Format) -> String {
        let mut s = match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable"),
            Format::Csv => self.csv.clone().unwrap_or_else(|| self.plain.clone()),
            Format::Plain => self.plain.clone(),
        };
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    }
}

macro_rules! to_value {
    ($v:expr) => {
        serde_json::to_value($v).expect("serializable")
    };
}

fn load_counter(global: &Global) -> Result<SortableCounter, Error> {
    match &global.cache {
        Some(p) => SortableCounter::load(p),
        None => Ok(SortableCounter::new()),
    }
}

fn save_counter(global: &Global, counter: &SortableCounter) {
    if let Some(p) = &global.cache {
        if let Err(e) = counter.save(p) {
            eprintln!("warning: cannot write cache {}: {e}", p.display());
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let g = &cli.global;
    let limits = g.limits();
    match &cli.command {
        Command::Sort {
            word,
            map,
            steps,
            trace,
        } => {
            let word: &Word = &word.parse()?;
            let chain = iterate(word, (*map).into(), *steps);
            let result = chain.last().unwrap().clone();
            let plain = if *trace {
                chain.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("\n")
            } else {
                result.to_string()
            };
            Ok(Output::new(
                json!({
                    "input": word.to_string(),
                    "map": SortVariant::from(*map),
                    "steps": steps,
                    "chain": words_json(&chain),
                    "result": result.to_string(),
                }),
                plain,
            ))
        }
        Command::Distance { word } => {
            let word: &Word = &word.parse()?;
            let fast = distance(word, SortVariant::Fast);
            let slow = distance(word, SortVariant::Slow);
            let gap = fast as i64 - slow as i64;
            Ok(Output::new(
                json!({"word": word.to_string(), "fast": fast, "slow": slow, "gap": gap}),
                format!("fast {fast}\nslow {slow}\ngap {gap}"),
            )
            .with_csv(format!("word,fast,slow,gap\n{word},{fast},{slow},{gap}")))
        }
        Command::Preimages {
            word,
            map,
            method,
            list,
        } => {
            let word: &Word = &word.parse()?;
            let v: SortVariant = (*map).into();
            let (count, words) = match method {
                Method::Vhc => {
                    let n = count_preimages(word, v, &limits)?;
                    let ws = if *list {
                        let mut ws = preimages_via_trees(word, v, &limits)?;
                        ws.sort();
                        Some(ws)
                    } else {
                        None
                    };
                    (n, ws)
                }
                Method::Brute => {
                    let ws = brute_preimages(word, v, &limits)?;
                    (BigUint::from(ws.len()), Some(ws))
                }
                Method::Trees => {
                    let mut ws = preimages_via_trees(word, v, &limits)?;
                    ws.sort();
                    (BigUint::from(ws.len()), Some(ws))
                }
            };
            let words = if *list { words } else { None };
            let mut plain = count.to_string();
            if let Some(ws) = &words {
                for w in ws {
                    plain.push('\n');
                    plain.push_str(&w.to_string());
                }
            }
            let mut j = json!({
                "word": word.to_string(),
                "map": v,
                "method": format!("{method:?}").to_lowercase(),
                "count": big(&count),
            });
            if let Some(ws) = &words {
                j["preimages"] = words_json(ws);
            }
            Ok(Output::new(j, plain))
        }
        Command::Vhc {
            word,
            filter,
            show_coloring,
        } => {
            let word: &Word = &word.parse()?;
            let configs = enumerate_vhc(word, *filter, &limits)?;
            let mut items = Vec::new();
            let mut lines = Vec::new();
            let mut total = BigUint::ZERO;
            for h in &configs {
                let q = induced_composition(word, h)?;
                let contribution = catalan_product(&q);
                total += &contribution;
                let mut item = json!({
                    "hooks": to_value!(h),
                    "q": to_value!(&q),
                    "contribution": big(&contribution),
                });
                let hooks: Vec<String> = h
                    .hooks()
                    .iter()
                    .map(|k| format!("({},{})->({},{})", k.sw.index, k.sw.height, k.ne.index, k.ne.height))
                    .collect();
                let parts: Vec<String> = q.parts().iter().map(|x| x.to_string()).collect();
                let mut line = format!(
                    "{} q=({}) C={contribution}",
                    if hooks.is_empty() { "-".to_string() } else { hooks.join(" ") },
                    parts.join(",")
                );
                if *show_coloring {
                    let coloring = induced_coloring(word, h)?;
                    item["coloring"] = to_value!(&coloring);
                    let cs: Vec<String> = coloring.colors().iter().map(|c| c.to_string()).collect();
                    line.push_str(&format!(" colors={}", cs.join(",")));
                }
                items.push(item);
                lines.push(line);
            }
            lines.push(format!("{} configurations, total {total}", configs.len()));
            Ok(Output::new(
                json!({
                    "word": word.to_string(),
                    "filter": filter.to_string(),
                    "configurations": items,
                    "count": configs.len(),
                    "total": big(&total),
                }),
                lines.join("\n"),
            ))
        }
        Command::CountSortable { map, counts } => {
            let c = ContentVector::new(counts.clone());
            let n = if g.cache.is_some() {
                let counter = load_counter(g)?;
                let n = match map {
                    Map::Fast => counter.fast(&c),
                    Map::Slow => counter.slow(&c),
                };
                save_counter(g, &counter);
                n
            } else {
                match map {
                    Map::Fast => count_fast_sortable(&c),
                    Map::Slow => count_slow_sortable(&c),
                }
            };
            Ok(Output::new(
                json!({"content": c.counts(), "map": SortVariant::from(*map), "count": big(&n)}),
                n.to_string(),
            ))
        }
        Command::SortableTable { max_total } => {
            let counter = load_counter(g)?;
            let rows = sortable_table(&counter, *max_total);
            save_counter(g, &counter);
            let csv = sortable_table_csv(&rows);
            let j: Vec<Value> = rows
                .iter()
                .map(|r| json!({"content": r.content.counts(), "M": big(&r.fast), "N": big(&r.slow)}))
                .collect();
            Ok(Output::new(Value::Array(j), csv.clone()).with_csv(csv))
        }
        Command::Uniform { ell, n, check } => {
            let r = uniform_report(*ell, *n, *check, &limits)?;
            let mut plain = r.fuss_catalan.to_string();
            if *check {
                plain.push_str(if r.consistent { "\ncheck: consistent" } else { "\ncheck: MISMATCH" });
            }
            let failed = *check && !r.consistent;
            let out = Output::new(to_value!(&r), plain);
            if failed {
                return Err(Error::Domain(format!(
                    "counting methods disagree: {}",
                    out.json
                )));
            }
            Ok(out)
        }
        Command::Gentree { axiom, rule, depth } => {
            let axiom = axiom.or_else(|| rule.default_axiom()).ok_or_else(|| {
                Error::Domain("this rule needs an explicit --axiom".to_string())
            })?;
            let spec = GenTreeSpec {
                axiom,
                rule: rule.clone(),
            };
            let counts = generating_tree_level_counts(&spec, *depth)?;
            let plain: Vec<String> = counts.iter().map(|x| x.to_string()).collect();
            let mut csv = String::from("level,count\n");
            for (i, c) in counts.iter().enumerate() {
                csv.push_str(&format!("{},{c}\n", i + 1));
            }
            Ok(Output::new(
                json!({
                    "axiom": axiom,
                    "rule": rule.to_string(),
                    "levels": counts.iter().map(big).collect::<Vec<_>>(),
                }),
                plain.join(","),
            )
            .with_csv(csv))
        }
        Command::Exceptional { max_len, list } => {
            let cfg = g.scan();
            let mut reports = Vec::new();
            let mut lines = Vec::new();
            let mut csv = String::from("m,exceptional,normalized,ratio\n");
            for m in 1..=*max_len {
                let r = timed(|| find_exceptional(m, &cfg))?;
                let e = &r.report;
                lines.push(format!(
                    "m={m} exceptional={} of {} ratio={}",
                    e.exceptional, e.normalized_words, e.ratio.decimal
                ));
                csv.push_str(&format!("{m},{},{},{}\n", e.exceptional, e.normalized_words, e.ratio.decimal));
                if *list {
                    for w in &e.witnesses {
                        lines.push(format!("  {w}"));
                    }
                    if e.truncated {
                        lines.push(format!("  ... truncated at {}", explorer::WITNESS_CAP));
                    }
                }
                let mut v = to_value!(&r);
                if !*list {
                    v.as_object_mut().unwrap().remove("witnesses");
                }
                reports.push(v);
            }
            Ok(Output::new(Value::Array(reports), lines.join("\n")).with_csv(csv))
        }
        Command::GapCensus { len, gap } => {
            let r = timed(|| gap_census(*len, *gap, &g.scan()))?;
            let csv = r.report.histogram_csv();
            Ok(Output::new(to_value!(&r), r.report.count.to_string()).with_csv(csv))
        }
        Command::Conjectures { max_len } => {
            let r = timed(|| scan_conjectures(*max_len, &g.scan()))?;
            let c = &r.report;
            let mut lines = Vec::new();
            for b in [&c.gap_bound, &c.doubling_bound] {
                lines.push(match &b.first_counterexample {
                    None => format!("{}: no counterexample up to length {max_len} ({} words checked)", b.statement, b.checked),
                    Some(p) => format!("{}: counterexample {} (fast {}, slow {})", b.statement, p.word, p.fast, p.slow),
                });
            }
            for row in c.lengths.iter().filter(|r| r.exceptional > 0) {
                lines.push(format!("m={} ratio={}", row.m, row.ratio.decimal));
            }
            lines.push(format!("ratios increasing: {}", c.ratios_increasing));
            for e in &c.eta_family {
                lines.push(format!("eta_{}: fast {} slow {}", e.n, e.fast, e.slow));
            }
            Ok(Output::new(to_value!(&r), lines.join("\n")))
        }
        Command::PatternClaim { len } => {
            let r = timed(|| verify_exceptional_pattern_claim(*len, &g.scan()))?;
            let mut plain = format!("{} checked, {} violators", r.report.checked, r.report.violators);
            for w in &r.report.witnesses {
                plain.push_str(&format!("\n  {w}"));
            }
            Ok(Output::new(to_value!(&r), plain))
        }
        Command::FertilityDemo { m } => {
            let r = timed(|| fertility_demo(*m, &limits))?;
            let mut lines = Vec::new();
            let mut csv = String::from("name,word,map,expected,vhc,brute,trees\n");
            let opt = |x: Option<u128>| x.map_or("-".to_string(), |v| v.to_string());
            for row in &r.report.rows {
                lines.push(format!(
                    "{} {} {}: expected {} vhc {} brute {} trees {}",
                    row.name, row.word, row.map, row.expected, row.vhc, opt(row.brute), opt(row.trees)
                ));
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    row.name, row.word, row.map, row.expected, row.vhc, opt(row.brute), opt(row.trees)
                ));
            }
            lines.push(format!("all agree: {}", r.report.all_agree));
            Ok(Output::new(to_value!(&r), lines.join("\n")).with_csv(csv))
        }
        Command::UniformScan { ell, max_n } => {
            let rows = timed(|| uniform_fertility_scan(*ell, *max_n, &g.scan()))?;
            let fmt = |v: &[BigUint]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let lines: Vec<String> = rows
                .report
                .iter()
                .map(|r| {
                    format!(
                        "n={} words={} fast={{{}}} slow={{{}}} uniquely sorted fast={} slow={}",
                        r.n, r.words, fmt(&r.fast_values), fmt(&r.slow_values),
                        r.uniquely_sorted_fast, r.uniquely_sorted_slow
                    )
                })
                .collect();
            Ok(Output::new(
                json!({"ell": ell, "rows": to_value!(&rows.report), "elapsed_ms": rows.elapsed_ms}),
                lines.join("\n"),
            ))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeLimit { .. } => 2,
        Error::Parse { .. } | Error::Domain(_) | Error::Contract(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // --help and --version exit 0, usage errors 2
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.global.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
