//! Text renderings of a scheme: the X/U figure and a TSV listing.

use picod_core::{verify, Scheme};

/// For each user, the 1-based index of the first transmission after which it decodes something.
pub fn first_decoding_row(scheme: &Scheme) -> Vec<Option<usize>> {
    let inst = scheme.instance();
    let mut first = vec![None; inst.m()];
    for k in 1..=scheme.len() {
        let prefix = Scheme::new(inst, scheme.transmissions()[..k].to_vec()).expect("prefix of a scheme");
        for (user, d) in verify(&prefix).decodable.iter().enumerate() {
            if first[user].is_none() && !d.is_empty() {
                first[user] = Some(k);
            }
        }
    }
    first
}

/// One column per message. `X` rows are supports; the `U` row under each
/// marks the users that can decode once that transmission is added.
pub fn ascii_figure(scheme: &Scheme, title: &str) -> String {
    let inst = scheme.instance();
    let m = inst.m();
    let pad = format!("t{}", scheme.len()).len() + 1;
    let mut out = format!("{title}\n");
    let tens: String = (1..=m).map(|j| if j % 10 == 0 { char::from(b'0' + (j / 10 % 10) as u8) } else { ' ' }).collect();
    let units: String = (1..=m).map(|j| char::from(b'0' + (j % 10) as u8)).collect();
    out.push_str(&format!("{:pad$}{}\n{:pad$}{}\n", "", tens.trim_end(), "", units));
    let first = first_decoding_row(scheme);
    for (k, t) in scheme.transmissions().iter().enumerate() {
        let mut xs = vec!['.'; m];
        for &j in t.support() {
            xs[j - 1] = 'X';
        }
        let us: String = (0..m)
            .map(|u| if first[u] == Some(k + 1) { 'U' } else { '.' })
            .collect();
        out.push_str(&format!("{:pad$}{}\n", format!("t{}", k + 1), xs.iter().collect::<String>()));
        out.push_str(&format!("{:pad$}{}\n", "", us));
    }
    out
}

/// `index`, `sender` and comma-separated `support`, one transmission per line.
pub fn tsv_listing(scheme: &Scheme) -> String {
    let mut out = String::from("index\tsender\tsupport\n");
    for (k, t) in scheme.transmissions().iter().enumerate() {
        let sender = t.sender().map_or_else(|| "-".to_string(), |u| u.to_string());
        let support: Vec<String> = t.support().iter().map(|j| j.to_string()).collect();
        out.push_str(&format!("{}\t{sender}\t{}\n", k + 1, support.join(",")));
    }
    out
}
