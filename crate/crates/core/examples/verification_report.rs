// Full verification run rendered as markdown.

use ncgrass::report::OutputFormat;
use ncgrass::verify::{run, RunConfig};

pub fn run_example(ms: Vec<usize>) -> ncgrass::Result<(usize, usize)> {
    let cfg = RunConfig {
        ms,
        format: OutputFormat::Markdown,
        ..RunConfig::default()
    };
    let report = run(&cfg)?;
    println!("{}", report.render(OutputFormat::Markdown));
    Ok((report.summary.passed, report.summary.total))
}

fn main() -> ncgrass::Result<()> {
    let (passed, total) = run_example(vec![2, 4])?;
    eprintln!("{passed}/{total} checks passed");
    Ok(())
}
