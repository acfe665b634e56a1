use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use graphtec::analysis::{
    alt_route_headroom, apply_furnace_variant, disruption_impact, iso_price_contour,
    published_ladder_targets, sensitivity_ladder, FurnaceVariant, LadderTarget,
    MarketCalibration,
};
use graphtec::costing::plant_cost;
use graphtec::error::{Error, Result};
use graphtec::montecarlo::{run_monte_carlo, SamplePlan};
use graphtec::report::{
    emit_breakdown_csv, emit_contour_csv, emit_disruption_csv, emit_ladder_csv,
    emit_projects_csv, emit_samples_csv, format_sig, to_rounded_json, OutputFormat, SIG_DIGITS,
};
use graphtec::scenario::{
    adjust_reported, apply_override, builtin_names, builtin_projects, load_builtin,
    parse_scenario, resolve_scenario, AdjustedProject, OverrideValue, Scenario,
};

/// Directory searched for `<name>.toml` scenario files when `--scenario`
/// does not name a built-in dataset or an existing path.
const DATA_DIR_ENV: &str = "GRAPHTEC_DATA_DIR";

#[derive(Parser)]
#[command(name = "graphtec", version, about = "Techno-economic model of battery-grade graphite production", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Built-in dataset name, a scenario file path, or a name resolved under
    /// $GRAPHTEC_DATA_DIR.
    #[arg(long)]
    scenario: String,
    /// Override a parameter baseline, e.g. --override plant.capacity=60000
    /// (repeatable).
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Deterministic baseline cost breakdown for a scenario.
    Cost {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo uncertainty propagation over the scenario's parameter ranges.
    Montecarlo {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Number of samples.
        #[arg(long, default_value_t = 10_000)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Reference prices ($/t, comma separated) for competitive fractions.
        #[arg(long, value_delimiter = ',')]
        prices: Vec<f64>,
        /// Include every sample row in JSON output (CSV always includes them).
        #[arg(long)]
        samples: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cumulative cost-reduction ladder along the route's published pathway.
    Ladder {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Custom ladder step, e.g. --target plant.capacity=80000
        /// (repeatable, replaces the published pathway).
        #[arg(long = "target", value_name = "KEY=VALUE")]
        targets: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Iso-IRR contours: OpEx vs capital intensity lines at given prices.
    Contour {
        /// Prices ($/t, comma separated).
        #[arg(long, value_delimiter = ',', required = true)]
        prices: Vec<f64>,
        /// Scenario supplying the finance basis (default 15%/10y).
        #[arg(long)]
        scenario: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare Acheson, box and continuous graphitization furnaces.
    Variants {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Publicly reported facility costs harmonized to the common finance basis.
    Projects {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// First-order EV-market impact of a graphite price shock.
    Disrupt {
        /// $/kg before the shock.
        #[arg(long)]
        price_before: f64,
        /// $/kg after the shock.
        #[arg(long)]
        price_after: f64,
        #[arg(long, default_value_t = 100.0)]
        kg_per_ev: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cost ceiling for an alternative feedstock that avoids given stages.
    Headroom {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Target product price, $/t.
        #[arg(long)]
        target_price: f64,
        /// Stages the alternative route avoids (comma separated; "plant"
        /// drops plant-level overhead too).
        #[arg(long, value_delimiter = ',', required = true)]
        avoid: Vec<String>,
    },
}

fn parse_key_value(raw: &str) -> Result<(String, f64)> {
    let (key, value) = raw
        .split_once('=')
        .ok_or_else(|| Error::validation(format!("expected KEY=VALUE, got '{raw}'")))?;
    let value: f64 = value
        .parse()
        .map_err(|_| Error::validation(format!("'{value}' is not a number in '{raw}'")))?;
    Ok((key.to_string(), value))
}

fn resolve(args: &ScenarioArgs) -> Result<Scenario> {
    let mut scenario = load_scenario(&args.scenario)?;
    for raw in &args.overrides {
        let (key, value) = parse_key_value(raw)?;
        apply_override(&mut scenario, &key, OverrideValue::Baseline(value))?;
    }
    Ok(scenario)
}

fn load_scenario(name: &str) -> Result<Scenario> {
    if builtin_names().contains(&name) {
        return load_builtin(name);
    }
    let mut candidates = vec![PathBuf::from(name)];
    if let Ok(dir) = std::env::var(DATA_DIR_ENV) {
        candidates.push(PathBuf::from(dir).join(format!("{name}.toml")));
    }
    for path in candidates {
        if path.is_file() {
            let text = std::fs::read_to_string(&path)?;
            return resolve_scenario(&parse_scenario(&text)?);
        }
    }
    Err(Error::UnknownScenario {
        name: name.to_string(),
        valid: builtin_names().join(", "),
    })
}

fn emit(output: &OutputArgs, csv: String, json: Result<String>) -> Result<()> {
    let text = match output.format {
        OutputFormat::Csv => csv,
        OutputFormat::Json => json?,
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct VariantRow {
    variant: String,
    breakeven_price: f64,
    capital_intensity: f64,
    opex_per_tonne: f64,
    graphitization_consumables: f64,
    graphitization_electricity: f64,
}

fn variant_row(label: &str, stage_id: &str, scenario: &Scenario) -> Result<VariantRow> {
    let bd = plant_cost(scenario)?;
    let stage = bd
        .stage(stage_id)
        .ok_or_else(|| Error::UnknownStage(stage_id.to_string()))?;
    Ok(VariantRow {
        variant: label.to_string(),
        breakeven_price: bd.breakeven_price,
        capital_intensity: bd.capital_intensity,
        opex_per_tonne: bd.total_opex_per_tonne,
        graphitization_consumables: stage.costs.consumables,
        graphitization_electricity: stage.costs.electricity,
    })
}

fn variants_csv(rows: &[VariantRow]) -> String {
    let mut out = String::from("# schema: variants.v1\n");
    out.push_str(
        "variant,breakeven_price,capital_intensity,opex_per_tonne,graphitization_consumables,graphitization_electricity\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.variant,
            format_sig(r.breakeven_price, SIG_DIGITS),
            format_sig(r.capital_intensity, SIG_DIGITS),
            format_sig(r.opex_per_tonne, SIG_DIGITS),
            format_sig(r.graphitization_consumables, SIG_DIGITS),
            format_sig(r.graphitization_electricity, SIG_DIGITS),
        ));
    }
    out
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Cost { scenario, output } => {
            let bd = plant_cost(&resolve(&scenario)?)?;
            emit(&output, emit_breakdown_csv(&bd), to_rounded_json(&bd))
        }
        Command::Montecarlo { scenario, n, seed, prices, samples, output } => {
            let base = resolve(&scenario)?;
            let plan = SamplePlan { n_samples: n, seed };
            let mut summary = run_monte_carlo(&base, &plan, &prices)?;
            let csv = emit_samples_csv(&summary);
            if !samples && output.format == OutputFormat::Json {
                summary.samples.clear();
            }
            emit(&output, csv, to_rounded_json(&summary))
        }
        Command::Ladder { scenario, targets, output } => {
            let base = resolve(&scenario)?;
            let targets = if targets.is_empty() {
                published_ladder_targets(base.route)
            } else {
                targets
                    .iter()
                    .map(|raw| parse_key_value(raw).map(|(k, v)| LadderTarget::new(&k, v)))
                    .collect::<Result<Vec<_>>>()?
            };
            let steps = sensitivity_ladder(&base, &targets)?;
            emit(&output, emit_ladder_csv(&steps), to_rounded_json(&steps))
        }
        Command::Contour { prices, scenario, output } => {
            let finance = match scenario {
                Some(name) => load_scenario(&name)?.finance,
                None => Default::default(),
            };
            let contours = prices
                .iter()
                .map(|&p| iso_price_contour(p, &finance))
                .collect::<Result<Vec<_>>>()?;
            emit(&output, emit_contour_csv(&contours), to_rounded_json(&contours))
        }
        Command::Variants { scenario, output } => {
            let base = resolve(&scenario)?;
            let boxed = apply_furnace_variant(&base, FurnaceVariant::Box)?;
            let continuous = apply_furnace_variant(&base, FurnaceVariant::Continuous)?;
            let rows = vec![
                variant_row("acheson", "acheson", &base)?,
                variant_row("box", "box", &boxed)?,
                variant_row("continuous", "continuous", &continuous)?,
            ];
            emit(&output, variants_csv(&rows), to_rounded_json(&rows))
        }
        Command::Projects { output } => {
            let fin = Default::default();
            let rows: Vec<AdjustedProject> = builtin_projects()
                .iter()
                .map(|p| adjust_reported(p, &fin))
                .collect::<Result<Vec<_>>>()?;
            emit(&output, emit_projects_csv(&rows), to_rounded_json(&rows))
        }
        Command::Disrupt { price_before, price_after, kg_per_ev, output } => {
            let result = disruption_impact(
                price_before,
                price_after,
                kg_per_ev,
                &MarketCalibration::default(),
            )?;
            emit(&output, emit_disruption_csv(&result), to_rounded_json(&result))
        }
        Command::Headroom { scenario, target_price, avoid } => {
            let bd = plant_cost(&resolve(&scenario)?)?;
            let avoided: Vec<&str> = avoid.iter().map(String::as_str).collect();
            let headroom = alt_route_headroom(&bd, target_price, &avoided)?;
            println!(
                "target_price,{}\navoided,{}\nheadroom,{}",
                format_sig(target_price, SIG_DIGITS),
                avoid.join(";"),
                format_sig(headroom, SIG_DIGITS)
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
