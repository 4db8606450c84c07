document.addEventListener('deviceready', onDeviceReady, false);

function onDeviceReady() {
  window.plugins.bluetooth.discoverDevices(onDevicesFound, onError);
}

function onDevicesFound(devices) {
  var list = document.getElementById('devices');
  var names = '';
  for (var i = 0; i < devices.length; i++) {
    names += devices[i].name + '<br/>';
  }
  list.innerHTML = names;
}

function onError(e) {
  console.log('discovery failed: ' + e);
}
