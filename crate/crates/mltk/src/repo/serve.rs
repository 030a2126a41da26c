use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream};
use std::path::{Component, Path, PathBuf};

use crate::error::{Error, Result};

fn content_type(path: &Path) -> &'static str {
    match path.extension().and_then(|e| e.to_str()) {
        Some("html") => "text/html; charset=utf-8",
        Some("js") => "text/javascript; charset=utf-8",
        Some("css") => "text/css; charset=utf-8",
        Some("json") => "application/json",
        Some("gz") => "application/gzip",
        Some("arff") | Some("csv") | Some("svm") | Some("xml") => "text/plain; charset=utf-8",
        _ => "application/octet-stream",
    }
}

/// Maps a request target onto a file under `root`, refusing anything that
/// climbs out of it.
fn resolve(root: &Path, target: &str) -> Option<PathBuf> {
    let path = target.split(['?', '#']).next().unwrap_or("/");
    let mut resolved = root.to_path_buf();
    for component in Path::new(path.trim_start_matches('/')).components() {
        match component {
            Component::Normal(part) => resolved.push(part),
            Component::CurDir => {}
            _ => return None,
        }
    }
    if resolved.is_dir() {
        resolved.push("index.html");
    }
    Some(resolved)
}

fn respond(root: &Path, stream: &mut TcpStream) -> std::io::Result<()> {
    let mut line = String::new();
    BufReader::new(&*stream).read_line(&mut line)?;
    let mut words = line.split_whitespace();
    let (method, target) = (words.next().unwrap_or(""), words.next().unwrap_or("/"));
    let file = if method == "GET" || method == "HEAD" {
        resolve(root, target).and_then(|p| fs::read(&p).ok().map(|b| (p, b)))
    } else {
        None
    };
    match file {
        Some((path, body)) => {
            write!(
                stream,
                "HTTP/1.1 200 OK\r\nContent-Type: {}\r\nContent-Length: {}\r\nConnection: close\r\n\r\n",
                content_type(&path),
                body.len()
            )?;
            if method == "GET" {
                stream.write_all(&body)?;
            }
        }
        None => {
            stream.write_all(b"HTTP/1.1 404 Not Found\r\nContent-Length: 9\r\nConnection: close\r\n\r\nnot found")?
        }
    }
    stream.flush()
}

/// Serves `root` over HTTP until the process is stopped.
pub fn serve(root: &Path, addr: &str) -> Result<()> {
    let listener = TcpListener::bind(addr).map_err(|e| Error::Invalid(format!("cannot listen on {addr}: {e}")))?;
    log::warn!(
        "serving {} at http://{}/",
        root.display(),
        listener.local_addr().map_err(|e| Error::io(root, e))?
    );
    for stream in listener.incoming() {
        match stream {
            Ok(mut stream) => {
                if let Err(e) = respond(root, &mut stream) {
                    log::debug!("request failed: {e}");
                }
            }
            Err(e) => log::debug!("connection failed: {e}"),
        }
    }
    Ok(())
}
