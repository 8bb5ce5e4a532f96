//! Ordered, fail-fast runs of several subcommands from one JSON file.

use std::fs;

use clap::Parser;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::args::{Cli, Command, PipelineArgs};
use crate::commands::{Ctx, Output, Report};
use crate::error::{CliError, Result};
use crate::paths::Workspace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineFile {
    #[serde(default)]
    pub description: Option<String>,
    pub stages: Vec<Stage>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stage {
    pub name: String,
    /// Arguments after the program name, starting with the subcommand.
    pub args: Vec<String>,
}

pub fn run(ctx: &Ctx, args: &PipelineArgs) -> Result<Report> {
    // The pipeline file is an invocation input, not a stage artifact, so it
    // is read relative to the current directory.
    let bytes = fs::read(&args.config).map_err(|e| CliError::io(&args.config, e))?;
    let file: PipelineFile = serde_json::from_slice(&bytes).map_err(|e| CliError::json_parse(&args.config, &e))?;
    let mut results = Vec::new();
    let mut human = Vec::new();
    for (index, stage) in file.stages.iter().enumerate() {
        let label = format!("stage {} ({})", index + 1, stage.name);
        let argv: Vec<String> = std::iter::once("hcs".to_string()).chain(stage.args.iter().cloned()).collect();
        let cli = Cli::try_parse_from(&argv).map_err(|e| CliError::usage(e.to_string().trim_end()).context(&label))?;
        if matches!(cli.command, Command::Pipeline(_)) {
            return Err(CliError::usage("pipelines cannot nest").context(&label));
        }
        let stage_ctx = Ctx {
            ws: cli.dir.as_deref().map_or_else(|| ctx.ws.clone(), |d| Workspace::new(ctx.ws.resolve(d))),
            argv: argv[1..].to_vec(),
            human: ctx.human,
        };
        let report = crate::execute(&stage_ctx, &cli.command).map_err(|e| e.context(&label))?;
        if let Some(failure) = report.failure {
            return Err(failure.context(&label));
        }
        let (result, text) = match report.output {
            Output::Summary { json, human } => (json, human),
            Output::Raw(text) => (Value::String(text.clone()), text),
        };
        human.push(format!("{label}: {text}"));
        results.push(json!({ "name": stage.name, "result": result }));
    }
    Ok(Report {
        output: Output::Summary {
            json: json!({ "stages": results }),
            human: if human.is_empty() { "empty pipeline".into() } else { human.join("\n") },
        },
        failure: None,
    })
}
