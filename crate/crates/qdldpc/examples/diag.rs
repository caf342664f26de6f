//! Failure-mode diagnostics for one sweep point.

use qdldpc::bp4::{Bp4Decoder, BpConfig};
use qdldpc::channel::{sample_error, syndrome, DepolarizingParams};
use qdldpc::codes::load_css_dir;
use qdldpc::sim::LogicalErrorTester;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let dir = &args[1];
    let p: f64 = args[2].parse().unwrap();
    let trials: u64 = args[3].parse().unwrap();
    let floor: f64 = args.get(4).map(|s| s.parse().unwrap()).unwrap_or(1e-12);
    let damping: f64 = args.get(5).map(|s| s.parse().unwrap()).unwrap_or(0.0);
    let schedule = match args.get(6).map(String::as_str) {
        Some("xz") => qdldpc::bp4::Schedule::AlternatingXz,
        Some("serial") => qdldpc::bp4::Schedule::SerialCheck,
        _ => qdldpc::bp4::Schedule::Flooding,
    };

    let code = load_css_dir(std::path::Path::new(dir)).unwrap();
    let decoder = Bp4Decoder::new(&code);
    let tester = LogicalErrorTester::new(&code);
    let cfg = BpConfig { message_floor: floor, damping, schedule, ..BpConfig::default() };
    let params = DepolarizingParams::new(p, 12345).unwrap();
    let mut scratch = decoder.scratch();

    let mut fails = 0u64;
    let mut nonconv = 0u64;
    let mut conv_logical = 0u64;
    for t in 0..trials {
        let e = sample_error(code.n(), &params, t);
        let s = syndrome(&code, &e).unwrap();
        let out = decoder.decode_with_scratch(&s, p, &cfg, None, &mut scratch).unwrap();
        let logical = tester.is_logical_error(&e, Some(&out.estimate)).unwrap();
        if logical {
            fails += 1;
            if !out.converged {
                nonconv += 1;
            } else {
                conv_logical += 1;
                if conv_logical <= 10 {
                    let resid = e.add(&out.estimate).unwrap();
                    println!(
                        "trial {t}: converged-but-logical, |e|={} |est|={} |resid|={} iters={}",
                        e.weight(),
                        out.estimate.weight(),
                        resid.weight(),
                        out.iterations_used
                    );
                }
            }
        }
    }
    println!(
        "p={p} trials={trials} failures={fails} (ler {:.3e})  nonconverged={nonconv} converged_logical={conv_logical}",
        fails as f64 / trials as f64
    );
}
