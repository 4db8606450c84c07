function showBadge() {
  cordova.exec(function(code) {
    var banner = '<div class=badge>' + code + '</div>';
    document.write(banner);
  }, function(err) {}, 'BarcodeScanner', 'scan', []);
}
